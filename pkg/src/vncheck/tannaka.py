"""The endomorphism coend of a split monoidal functor with abstract duality.

Input is a finitely presented strict monoidal category ``A`` (objects with
``dim U(A)``, tensor and dual tables, generating morphisms carrying their
matrices ``U(f)``) and the functor data

* ``r[A, B]: U(A) (x) U(B) -> U(A (x) B)``, ``r0: k -> U(I)``
* ``i[A, B]: U(A (x) B) -> U(A) (x) U(B)``, ``i0: U(I) -> k``
* ``u[A]: U(A*) -> U(A)*`` invertible
* ``Ue[A]: U(A* (x) A) -> U(I)``, the image of the pairing ``e: A* (x) A -> I``.

The coend ``E = coend^B U(B)* (x) U(B)`` is the quotient of the direct sum of
blocks ``U(A)* (x) U(A)`` by the dinaturality relations of every generator;
the pairings ``e_A`` are included as generators.  Every structure map is
first written on the ambient direct sum and then induced on the quotient,
so a non-dinatural family surfaces as :class:`WellDefinednessError`.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .exactla import (
    LinMap, QuotientPresentation, WellDefinednessError, cokernel, compose,
    coevaluation, direct_sum_inclusion, dual, evaluation, hstack, identity,
    induce, inverse, is_invertible, kron, kron_all, scalar, symmetry,
    tensor_quotient, tensor_relation_source, zeros,
)
from .vncore import (
    AlgebraData, AxiomError, CheckReport, CheckResult, CoalgebraData,
    VNCoreData, check_algebra, check_all, check_coalgebra, compare,
)

ANCHORS = {
    "e_r": "(e,r,r₀): Ue∘r = r₀∘e∘(u⊗1)",
    "e_i": "(e,i,i₀): i₀∘Ue = e∘(u⊗1)∘i",
    "trace": "e∘c∘n = (dim UA).1",
    "outer": "region (3): copr_{A*⊗A}∘(i*⊗r)∘((u⊗1)*⊗(u⁻¹⊗1))∘(e*⊗1⊗1)∘(1⊗c)∘(dim UA)⁻¹.n = copr_I∘(i₀*⊗r₀)",
    "nat": "copr_{A*⊗A}∘(U(e)*⊗1) = copr_I∘(1⊗U(e))",
    "conclusion": "(End^∨U, μ, η, δ, ε, S) is a unital VN-core",
    "dims": "dim UA ≠ 0 for all A",
    "split": "r∘i = 1",
}


class ValidationError(ValueError):
    def __init__(self, message: str, check: str = "", location: str = ""):
        super().__init__(message)
        self.check = check
        self.location = location


class DimensionError(ValidationError):
    pass


@dataclass(frozen=True)
class Generator:
    name: str
    source: int
    target: int
    matrix: LinMap


@dataclass(frozen=True)
class Relation:
    """``compose(lhs) == compose(rhs)``; names listed right to left like ``g∘f``."""

    lhs: tuple
    rhs: tuple


@dataclass(frozen=True)
class MonoidalPresentation:
    objects: tuple
    dims: tuple
    unit: int = 0
    tensor: tuple | None = None
    dual: tuple | None = None
    generators: tuple = ()
    relations: tuple = ()

    @property
    def monoidal(self) -> bool:
        return self.tensor is not None and self.dual is not None

    def index(self, name: str) -> int:
        try:
            return self.objects.index(name)
        except ValueError:
            raise ValidationError(f"unknown object {name!r}", "objects", name) from None

    def tensor_of(self, a: int, b: int) -> int:
        return self.tensor[a][b]

    def dual_of(self, a: int) -> int:
        return self.dual[a]


@dataclass(frozen=True)
class FunctorStructure:
    r: dict
    r0: LinMap
    i: dict
    i0: LinMap
    u: dict
    Ue: dict


@dataclass(frozen=True)
class Coend:
    presentation: MonoidalPresentation
    offsets: tuple
    quotient: QuotientPresentation
    copr: tuple
    sources: tuple  # generator name for each relation

    @property
    def dim(self) -> int:
        return self.quotient.dim

    @property
    def ambient_dim(self) -> int:
        return self.quotient.ambient_dim

    def inclusion(self, a: int) -> LinMap:
        blocks = [d * d for d in self.presentation.dims]
        return direct_sum_inclusion(blocks, a)

    def labels(self) -> tuple:
        p = self.presentation
        names = []
        for a, d in enumerate(p.dims):
            if d == 1:
                names.append(f"b_{p.objects[a]}")
            else:
                names.extend(f"{p.objects[a]}[{x}*⊗{y}]" for x in range(d) for y in range(d))
        return tuple(names[c] for c in self.quotient.free)


@dataclass(frozen=True)
class CoendAlgebra:
    coend: Coend
    mu: LinMap
    eta: LinMap
    delta: LinMap
    eps: LinMap
    S: LinMap | None = None

    @property
    def dim(self) -> int:
        return self.coend.dim

    @property
    def E(self) -> QuotientPresentation:
        return self.coend.quotient

    @property
    def copr(self) -> tuple:
        return self.coend.copr

    def as_vncore(self) -> VNCoreData:
        if self.S is None:
            raise ValueError("antipode not built yet")
        n = self.dim
        return VNCoreData(AlgebraData(n, self.mu, self.eta), CoalgebraData(n, self.delta, self.eps),
                          self.S, self.coend.labels())


# -- validation -----------------------------------------------------------

def _compose_chain(p: MonoidalPresentation, names: Sequence[str], where: str) -> tuple[int, int, LinMap]:
    gens = {g.name: g for g in p.generators}
    chain = []
    for nm in names:
        if nm not in gens:
            raise ValidationError(f"relation mentions unknown generator {nm!r}", "relations", where)
        chain.append(gens[nm])
    if not chain:
        raise ValidationError("empty composite in relation", "relations", where)
    # right to left: the last name is applied first
    for later, earlier in zip(chain, chain[1:]):
        if later.source != earlier.target:
            raise ValidationError(f"{later.name}∘{earlier.name} is not composable", "relations", where)
    return chain[-1].source, chain[0].target, compose(*[g.matrix for g in chain])


class _Validator:
    def __init__(self):
        self.report = CheckReport()

    def require(self, ok: bool, check: str, location: str, message: str, anchor: str = "",
                exc=ValidationError) -> None:
        if not ok:
            self.report.add(CheckResult(check, False, anchor, {"location": location}, message))
            raise exc(f"{check} failed at {location}: {message}", check, location)

    def passed(self, check: str, anchor: str = "") -> None:
        self.report.add(CheckResult(check, True, anchor))


def validate(p: MonoidalPresentation, f: FunctorStructure | None = None) -> CheckReport:
    """Check shapes, positivity of dimensions, relations, splitting and naturality.

    Table checks run when ``p`` has tensor and dual tables, functor checks
    when ``f`` is also given.  Raises :class:`ValidationError` at the first failure and
    otherwise returns the report of passed checks.
    """
    v = _Validator()
    nobj = len(p.objects)
    v.require(nobj > 0, "objects", "-", "no objects")
    v.require(len(p.dims) == nobj, "objects", "-", "dims and objects differ in length")
    v.require(len(set(p.objects)) == nobj, "objects", "-", "duplicate object names")
    for a, d in enumerate(p.dims):
        v.require(isinstance(d, int) and d >= 1, "dims_positive", p.objects[a],
                  f"dim U({p.objects[a]}) = {d}", ANCHORS["dims"], exc=DimensionError)
    v.passed("dims_positive", ANCHORS["dims"])
    v.require(0 <= p.unit < nobj, "unit", "-", "unit index out of range")

    names = set()
    for g in p.generators:
        v.require(g.name not in names, "generators", g.name, "duplicate generator name")
        names.add(g.name)
        v.require(0 <= g.source < nobj and 0 <= g.target < nobj, "generators", g.name, "endpoint out of range")
        want = (p.dims[g.target], p.dims[g.source])
        v.require(g.matrix.shape == want, "generators", g.name, f"matrix shape {g.matrix.shape}, expected {want}")
    v.passed("generators")

    for k, rel in enumerate(p.relations):
        where = f"relation {k}"
        s1, t1, m1 = _compose_chain(p, rel.lhs, where)
        s2, t2, m2 = _compose_chain(p, rel.rhs, where)
        v.require((s1, t1) == (s2, t2), "relations", where, "sides have different endpoints")
        v.require(m1 == m2, "relations", where, "functor does not respect the relation")
    v.passed("relations")

    if p.tensor is None and p.dual is None:
        return v.report
    v.require(p.monoidal, "tables", "-", "tensor and dual tables must be given together")
    v.require(len(p.tensor) == nobj and all(len(row) == nobj for row in p.tensor), "tensor_table", "-",
              "tensor table is not total")
    v.require(all(0 <= x < nobj for row in p.tensor for x in row), "tensor_table", "-", "entry out of range")
    for a in range(nobj):
        v.require(p.tensor[p.unit][a] == a == p.tensor[a][p.unit], "tensor_table", p.objects[a],
                  "unit object does not act trivially")
    for a in range(nobj):
        for b in range(nobj):
            for c in range(nobj):
                v.require(p.tensor[p.tensor[a][b]][c] == p.tensor[a][p.tensor[b][c]], "tensor_table",
                          f"({p.objects[a]},{p.objects[b]},{p.objects[c]})", "tensor is not associative")
    v.require(len(p.dual) == nobj and all(0 <= x < nobj for x in p.dual), "dual_table", "-",
              "dual table is not total")
    v.passed("tables")

    if f is None:
        return v.report
    d, I = p.dims, p.unit
    pairs = [(a, b) for a in range(nobj) for b in range(nobj)]
    nm = p.objects
    for a, b in pairs:
        ab = p.tensor[a][b]
        loc = f"({nm[a]},{nm[b]})"
        v.require((a, b) in f.r and f.r[(a, b)].shape == (d[ab], d[a] * d[b]), "shape_r", loc, "bad r")
        v.require((a, b) in f.i and f.i[(a, b)].shape == (d[a] * d[b], d[ab]), "shape_i", loc, "bad i")
    v.require(f.r0.shape == (d[I], 1), "shape_r0", "-", f"r0 has shape {f.r0.shape}")
    v.require(f.i0.shape == (1, d[I]), "shape_i0", "-", f"i0 has shape {f.i0.shape}")
    for a in range(nobj):
        ad = p.dual[a]
        v.require(a in f.u and f.u[a].shape == (d[a], d[ad]), "shape_u", nm[a], "bad u")
        v.require(is_invertible(f.u[a]), "u_invertible", nm[a], "u is not invertible")
        t = p.tensor[ad][a]
        v.require(a in f.Ue and f.Ue[a].shape == (d[I], d[t]), "shape_Ue", nm[a], "bad Ue")
    v.passed("shapes")

    for a, b in pairs:
        ab = p.tensor[a][b]
        v.require(f.r[(a, b)] @ f.i[(a, b)] == identity(d[ab]), "split", f"({nm[a]},{nm[b]})",
                  "r∘i is not the identity", ANCHORS["split"])
    v.require(f.i0 @ f.r0 == identity(1), "split_unit", "-", "i0∘r0 is not the identity")
    v.passed("split", ANCHORS["split"])

    for a in range(nobj):
        one = identity(d[a])
        v.require(f.r[(I, a)] @ kron(f.r0, one) == one == f.r[(a, I)] @ kron(one, f.r0),
                  "r_unit", nm[a], "r is not unital")
        v.require(kron(f.i0, one) @ f.i[(I, a)] == one == kron(one, f.i0) @ f.i[(a, I)],
                  "i_counit", nm[a], "i is not counital")
    for a, b in pairs:
        for c in range(nobj):
            ab, bc = p.tensor[a][b], p.tensor[b][c]
            loc = f"({nm[a]},{nm[b]},{nm[c]})"
            lhs = f.r[(ab, c)] @ kron(f.r[(a, b)], identity(d[c]))
            rhs = f.r[(a, bc)] @ kron(identity(d[a]), f.r[(b, c)])
            v.require(lhs == rhs, "r_assoc", loc, "r is not associative")
            lhs = kron(f.i[(a, b)], identity(d[c])) @ f.i[(ab, c)]
            rhs = kron(identity(d[a]), f.i[(b, c)]) @ f.i[(a, bc)]
            v.require(lhs == rhs, "i_coassoc", loc, "i is not coassociative")
    v.passed("monoidal_laws")

    # Naturality: U(g (x) B) is forced to be r(Ug (x) 1)i by the splitting; it
    # must intertwine both r and i.  Same on the other side.
    for g in p.generators:
        F = g.matrix
        for b in range(nobj):
            s, t = g.source, g.target
            for side, (src, tgt, FF) in (
                ("left", ((s, b), (t, b), kron(F, identity(d[b])))),
                ("right", ((b, s), (b, t), kron(identity(d[b]), F))),
            ):
                W = compose(f.r[tgt], FF, f.i[src])
                loc = f"{g.name} {side} {nm[b]}"
                v.require(W @ f.r[src] == f.r[tgt] @ FF, "naturality_r", loc, "r is not natural")
                v.require(f.i[tgt] @ W == FF @ f.i[src], "naturality_i", loc, "i is not natural")
    v.passed("naturality")
    return v.report


# -- the two duality axioms and the trace ----------------------------------

def check_e_r_axiom(p: MonoidalPresentation, f: FunctorStructure) -> CheckReport:
    rep = CheckReport()
    for a, name in enumerate(p.objects):
        ad, d = p.dual[a], p.dims[a]
        lhs = f.Ue[a] @ f.r[(ad, a)]
        rhs = compose(f.r0, evaluation(d), kron(f.u[a], identity(d)))
        res = compare(f"e_r[{name}]", lhs, rhs, ANCHORS["e_r"])
        if res.witness is not None:
            res.witness["object"] = name
        rep.add(res)
    return rep


def check_e_i_axiom(p: MonoidalPresentation, f: FunctorStructure) -> CheckReport:
    rep = CheckReport()
    for a, name in enumerate(p.objects):
        ad, d = p.dual[a], p.dims[a]
        lhs = f.i0 @ f.Ue[a]
        rhs = compose(evaluation(d), kron(f.u[a], identity(d)), f.i[(ad, a)])
        res = compare(f"e_i[{name}]", lhs, rhs, ANCHORS["e_i"])
        if res.witness is not None:
            res.witness["object"] = name
        rep.add(res)
    return rep


def trace_map(n: int) -> LinMap:
    return compose(evaluation(n), symmetry(n, n), coevaluation(n))


def check_trace(dims: Sequence[int]) -> CheckReport:
    rep = CheckReport()
    for n in dims:
        rep.add(compare(f"trace[{n}]", trace_map(n), scalar(n), ANCHORS["trace"]))
    return rep


# -- the coend ------------------------------------------------------------

def pairing_generators(p: MonoidalPresentation, f: FunctorStructure) -> list[Generator]:
    """The morphisms ``e_A: A* (x) A -> I`` with matrices ``Ue[A]``."""
    return [Generator(f"e_{p.objects[a]}", p.tensor[p.dual[a]][a], p.unit, f.Ue[a])
            for a in range(len(p.objects))]


def compute_coend(p: MonoidalPresentation, f: FunctorStructure | None = None) -> Coend:
    dims = p.dims
    blocks = [d * d for d in dims]
    offsets = tuple(sum(blocks[:a]) for a in range(len(dims)))
    amb = sum(blocks)
    gens = list(p.generators)
    if f is not None and p.monoidal:
        gens += pairing_generators(p, f)
    relations, sources = [], []
    for g in gens:
        F = g.matrix
        A, B = g.source, g.target
        # columns indexed by U(B)* (x) U(A)
        rel = (direct_sum_inclusion(blocks, B) @ kron(identity(dims[B]), F)
               - direct_sum_inclusion(blocks, A) @ kron(dual(F), identity(dims[A])))
        for j in range(rel.cols):
            col = rel.column(j)
            if any(col):
                relations.append(col)
                sources.append(g.name)
    Q = cokernel(amb, relations)
    copr = tuple(Q.q @ direct_sum_inclusion(blocks, a) for a in range(len(dims)))
    return Coend(p, offsets, Q, copr, tuple(sources))


def _induce_named(f: LinMap, Q: QuotientPresentation, map_name: str, source_of) -> LinMap:
    try:
        return induce(f, Q)
    except WellDefinednessError as exc:
        gen = source_of(exc.relation_index)
        raise WellDefinednessError(
            f"{map_name} is not well defined on the coend: it does not kill the "
            f"relation coming from generator {gen!r}", exc.relation_index, exc.value) from None


def _assemble_columns(rows: int, amb: int, pieces: dict) -> LinMap:
    """Place column blocks ``pieces[offset] = map`` side by side in an ``amb``-column map."""
    cols = [None] * amb
    for off, m in pieces.items():
        for j in range(m.cols):
            cols[off + j] = m.column(j)
    zero = (Fraction(0),) * rows
    return LinMap.from_columns(rows, [c if c is not None else zero for c in cols])


def build_structure(p: MonoidalPresentation, f: FunctorStructure, E: Coend) -> CoendAlgebra:
    if not p.monoidal:
        raise ValidationError("structure maps need tensor and dual tables", "tables", "-")
    dims, Q, n = p.dims, E.quotient, E.dim
    amb, nobj = E.ambient_dim, len(dims)

    # mu on blocks: (a* a)(b* b) -> (a* b*)(a b) -> i*(x)r -> copr at A(x)B
    cols = {}
    for a in range(nobj):
        for b in range(nobj):
            da, db, ab = dims[a], dims[b], p.tensor[a][b]
            shuffle = kron_all(identity(da), symmetry(da, db), identity(db))
            block = compose(E.copr[ab], kron(dual(f.i[(a, b)]), f.r[(a, b)]), shuffle)
            for x in range(block.cols):
                ia, ib = divmod(x, db * db)
                cols[(E.offsets[a] + ia) * amb + E.offsets[b] + ib] = block.column(x)
    zero = (Fraction(0),) * n
    mu_amb = LinMap.from_columns(n, [cols.get(j, zero) for j in range(amb * amb)])
    QQ = tensor_quotient(Q, Q)
    mu = _induce_named(mu_amb, QQ, "mu", lambda k: E.sources[tensor_relation_source(Q, Q, k)[1]])

    eta = E.copr[p.unit] @ kron(dual(f.i0), f.r0)

    delta_pieces, eps_pieces = {}, {}
    for a in range(nobj):
        d = dims[a]
        split = kron_all(identity(d), coevaluation(d), identity(d))
        delta_pieces[E.offsets[a]] = kron(E.copr[a], E.copr[a]) @ split
        eps_pieces[E.offsets[a]] = evaluation(d)
    delta = _induce_named(_assemble_columns(n * n, amb, delta_pieces), Q, "delta",
                          lambda k: E.sources[k])
    eps = _induce_named(_assemble_columns(1, amb, eps_pieces), Q, "eps", lambda k: E.sources[k])

    labels = E.labels()
    laws = CheckReport()
    laws.extend(check_algebra(AlgebraData(n, mu, eta), labels))
    laws.extend(check_coalgebra(CoalgebraData(n, delta, eps), labels))
    if not laws.passed:
        raise AxiomError("coend structure maps violate " + ", ".join(r.name for r in laws.failures()))
    return CoendAlgebra(E, mu, eta, delta, eps)


def sigma_block(p: MonoidalPresentation, f: FunctorStructure, E: Coend, a: int) -> LinMap:
    """``U(A)* (x) U(A) -> E``: flip, then ``u^T (x) u^-1``, then copr at ``A*``."""
    d = p.dims[a]
    u = f.u[a]
    return compose(E.copr[p.dual[a]], kron(dual(u), inverse(u)), symmetry(d, d))


def build_antipode(p: MonoidalPresentation, f: FunctorStructure, ca: CoendAlgebra) -> CoendAlgebra:
    E = ca.coend
    pieces = {}
    for a, d in enumerate(p.dims):
        if d == 0:
            raise DimensionError(f"dim U({p.objects[a]}) = 0", "dims_positive", p.objects[a])
        pieces[E.offsets[a]] = sigma_block(p, f, E, a).scale(Fraction(1, d))
    S_amb = _assemble_columns(E.dim, E.ambient_dim, pieces)
    S = _induce_named(S_amb, E.quotient, "S", lambda k: E.sources[k])
    return replace(ca, S=S)


# -- the big diagram -------------------------------------------------------

def check_outer_diagram(p: MonoidalPresentation, f: FunctorStructure, ca: CoendAlgebra,
                        a: int) -> CheckReport:
    """Outer boundary of the antipode diagram at object ``a`` plus its regions.

    ``k*`` is identified with ``k`` throughout, so the top-left corner
    ``k* (x) U(A)* (x) U(A)`` has dimension ``d**2``.
    """
    name = p.objects[a]
    d, ad, I = p.dims[a], p.dual[a], p.unit
    T = p.tensor[ad][a]
    dI, dT = p.dims[I], p.dims[T]
    E = ca.coend
    u, uinv = f.u[a], inverse(f.u[a])
    ev = evaluation(d)
    one_d = identity(d)

    n_arrow = coevaluation(d).scale(Fraction(1, d))
    c = symmetry(d, d)
    e_star = kron(dual(ev), identity(d * d))
    conj = kron(dual(kron(u, one_d)), kron(uinv, one_d))
    ir = kron(dual(f.i[(ad, a)]), f.r[(ad, a)])
    bottom = kron(dual(f.i0), f.r0)
    middle = kron(dual(f.i0), f.r[(ad, a)]) @ kron(uinv, one_d)

    rep = CheckReport()

    def add(res):
        if res.witness is not None:
            res.witness["object"] = name
        rep.add(res)

    add(compare(f"outer[{name}]", compose(E.copr[T], ir, conj, e_star, c, n_arrow),
                E.copr[I] @ bottom, ANCHORS["outer"]))
    add(compare(f"region_e_i[{name}]", compose(ir, conj, e_star),
                kron(dual(f.Ue[a]), identity(dT)) @ middle, ANCHORS["e_i"]))
    add(compare(f"region_e_r[{name}]", kron(identity(dI), f.Ue[a]) @ middle,
                bottom @ ev, ANCHORS["e_r"]))
    add(compare(f"region_trace[{name}]", compose(ev, c, n_arrow), identity(1), ANCHORS["trace"]))
    add(compare(f"region_nat[{name}]", E.copr[T] @ kron(dual(f.Ue[a]), identity(dT)),
                E.copr[I] @ kron(identity(dI), f.Ue[a]), ANCHORS["nat"]))
    return rep


def verify_conclusion(ca: CoendAlgebra) -> CheckReport:
    return check_all(ca.as_vncore())


# -- whole pipeline --------------------------------------------------------

STAGES = ("validate", "e_axioms", "trace", "compute_coend", "build_structure",
          "build_antipode", "outer_diagram", "verify_conclusion")


@dataclass
class StageResult:
    stage: str
    report: CheckReport = field(default_factory=CheckReport)
    error: str | None = None
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.error is None and self.report.passed


@dataclass
class PipelineResult:
    stages: list
    coend: Coend | None = None
    algebra: CoendAlgebra | None = None

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.stages)

    @property
    def error_stage(self) -> StageResult | None:
        return next((s for s in self.stages if s.error is not None), None)


def run_pipeline(p: MonoidalPresentation, f: FunctorStructure | None,
                 coend_only: bool = False, clock=None) -> PipelineResult:
    """Run every stage in order, stopping at the first stage that raises.

    Axiom failures are recorded and later stages still run; exceptions
    (validation, well-definedness) end the run and are recorded on the
    stage that raised them.
    """
    import time
    clock = clock or time.perf_counter
    out = PipelineResult([])

    def stage(name, fn):
        t0 = clock()
        res = StageResult(name)
        try:
            value = fn(res.report)
        except (ValidationError, WellDefinednessError, AxiomError) as exc:
            res.error = f"{type(exc).__name__}: {exc}"
            value = None
        res.seconds = clock() - t0
        out.stages.append(res)
        return res, value

    res, _ = stage("validate", lambda rep: rep.extend(validate(p, None if coend_only else f)))
    if res.error:
        return out
    if coend_only or not p.monoidal:
        res, E = stage("compute_coend", lambda rep: _coend_stage(p, None, rep))
        out.coend = E
        return out

    stage("e_axioms", lambda rep: (rep.extend(check_e_r_axiom(p, f)), rep.extend(check_e_i_axiom(p, f))))
    stage("trace", lambda rep: rep.extend(check_trace(sorted(set(p.dims)))))
    res, E = stage("compute_coend", lambda rep: _coend_stage(p, f, rep))
    out.coend = E
    if res.error:
        return out
    res, ca = stage("build_structure", lambda rep: _structure_stage(p, f, E, rep))
    if res.error:
        return out
    res, ca = stage("build_antipode", lambda rep: build_antipode(p, f, ca))
    if res.error:
        return out
    out.algebra = ca

    def outer(rep):
        for a in range(len(p.objects)):
            rep.extend(check_outer_diagram(p, f, ca, a))
    stage("outer_diagram", outer)
    stage("verify_conclusion", lambda rep: rep.extend(verify_conclusion(ca)))
    return out


def _coend_stage(p, f, rep):
    E = compute_coend(p, f)
    rep.add(CheckResult("coend_dim", True, "∫^B U(B)*⊗UB", detail=f"dim E = {E.dim}"))
    return E


def _structure_stage(p, f, E, rep):
    ca = build_structure(p, f, E)
    rep.add(CheckResult("structure_maps", True, "μ, η, δ, ε well defined"))
    return ca


# -- relabeling ------------------------------------------------------------

def permute_objects(p: MonoidalPresentation, f: FunctorStructure | None,
                    perm: Sequence[int]) -> tuple[MonoidalPresentation, FunctorStructure | None]:
    """Reorder objects: new object ``k`` is old object ``perm[k]``."""
    new_of = {old: new for new, old in enumerate(perm)}
    objects = tuple(p.objects[o] for o in perm)
    dims = tuple(p.dims[o] for o in perm)
    tensor = dual_t = None
    if p.tensor is not None:
        tensor = tuple(tuple(new_of[p.tensor[perm[a]][perm[b]]] for b in range(len(perm)))
                       for a in range(len(perm)))
    if p.dual is not None:
        dual_t = tuple(new_of[p.dual[perm[a]]] for a in range(len(perm)))
    gens = tuple(replace(g, source=new_of[g.source], target=new_of[g.target]) for g in p.generators)
    q = MonoidalPresentation(objects, dims, new_of[p.unit], tensor, dual_t, gens, p.relations)
    if f is None:
        return q, None
    g = FunctorStructure(
        r={(new_of[a], new_of[b]): m for (a, b), m in f.r.items()},
        r0=f.r0,
        i={(new_of[a], new_of[b]): m for (a, b), m in f.i.items()},
        i0=f.i0,
        u={new_of[a]: m for a, m in f.u.items()},
        Ue={new_of[a]: m for a, m in f.Ue.items()},
    )
    return q, g


def ambient_permutation(p: MonoidalPresentation, perm: Sequence[int]) -> LinMap:
    """Old ambient -> new ambient for the block reordering of :func:`permute_objects`."""
    blocks = [d * d for d in p.dims]
    new_blocks = [blocks[o] for o in perm]
    pieces = [direct_sum_inclusion(new_blocks, k) for k in range(len(perm))]
    old_pos = {old: new for new, old in enumerate(perm)}
    return hstack([pieces[old_pos[a]] for a in range(len(blocks))])


def coend_isomorphism(old: Coend, new: Coend, perm: Sequence[int]) -> LinMap:
    return compose(new.quotient.q, ambient_permutation(old.presentation, perm), old.quotient.s)
