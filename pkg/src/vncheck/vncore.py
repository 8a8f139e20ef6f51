"""Finite-dimensional (co)algebras over the rationals and the VN-core axioms.

A VN-core on a carrier ``A`` of dimension ``n`` is an algebra ``(mu, eta)``
and a coalgebra ``(delta, eps)`` satisfying the bialgebra compatibility
``delta mu = (mu x mu)(1 x c x 1)(delta x delta)`` together with an
endomorphism ``S`` such that ``mu3 (1 x S x 1) delta3 = 1``.  It is unital
when moreover ``1 x eta = (1 x mu)(1 x S x 1) delta3``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .exactla import (
    LinMap, compose, identity, kron, kron_all, scalar, symmetry,
)

# Equations carried into reports as anchors.
ANCHORS = {
    "associativity": "mu(mu x 1) = mu(1 x mu)",
    "unit": "mu(eta x 1) = 1 = mu(1 x eta)",
    "coassociativity": "(delta x 1)delta = (1 x delta)delta",
    "counit": "(eps x 1)delta = 1 = (1 x eps)delta",
    "compat": "δμ = (μ⊗μ)(1⊗c⊗1)(δ⊗δ)",
    "vn": "μ₃(1⊗S⊗1)δ₃ = 1: A→A",
    "unital": "1⊗η = (1⊗μ)(1⊗S⊗1)δ₃",
    "antipode": "mu(S x 1)delta = eta eps = mu(1 x S)delta",
}


class AxiomError(ValueError):
    pass


class NotAGroupError(ValueError):
    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(message)
        self.witness = witness


@dataclass
class CheckResult:
    name: str
    passed: bool
    anchor: str = ""
    witness: dict | None = None
    detail: str = ""

    def to_dict(self) -> dict:
        d = {"name": self.name, "passed": self.passed, "anchor": self.anchor}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass
class CheckReport:
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, name: str) -> CheckResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(r.name == name for r in self.results)

    def add(self, result: CheckResult) -> CheckResult:
        self.results.append(result)
        return result

    def extend(self, other: "CheckReport", prefix: str = "") -> None:
        for r in other.results:
            self.results.append(CheckResult(prefix + r.name, r.passed, r.anchor, r.witness, r.detail))

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checks": [r.to_dict() for r in self.results]}


def _fmt_vec(col) -> list[str]:
    return [str(x) for x in col]


def compare(name: str, lhs: LinMap, rhs: LinMap, anchor: str = "",
            labels: Sequence[str] | None = None) -> CheckResult:
    """Exact comparison; on failure the witness is a domain basis vector."""
    if lhs.shape != rhs.shape:
        return CheckResult(name, False, anchor, detail=f"shape {lhs.shape} != {rhs.shape}")
    j = lhs.first_difference(rhs)
    if j is None:
        return CheckResult(name, True, anchor)
    witness = {
        "basis_index": j,
        "lhs": _fmt_vec(lhs.column(j)),
        "rhs": _fmt_vec(rhs.column(j)),
    }
    if labels is not None:
        witness["basis"] = labels[j]
    return CheckResult(name, False, anchor, witness)


def tensor_labels(labels: Sequence[str], k: int) -> list[str]:
    return ["⊗".join(t) for t in itertools.product(labels, repeat=k)]


@dataclass(frozen=True)
class AlgebraData:
    dim: int
    mu: LinMap
    eta: LinMap

    def __post_init__(self):
        n = self.dim
        if self.mu.shape != (n, n * n) or self.eta.shape != (n, 1):
            raise AxiomError(f"algebra maps have shapes {self.mu.shape}, {self.eta.shape} for dim {n}")


@dataclass(frozen=True)
class CoalgebraData:
    dim: int
    delta: LinMap
    eps: LinMap

    def __post_init__(self):
        n = self.dim
        if self.delta.shape != (n * n, n) or self.eps.shape != (1, n):
            raise AxiomError(f"coalgebra maps have shapes {self.delta.shape}, {self.eps.shape} for dim {n}")


@dataclass(frozen=True)
class VNCoreData:
    algebra: AlgebraData
    coalgebra: CoalgebraData
    S: LinMap
    labels: tuple = ()

    def __post_init__(self):
        if self.algebra.dim != self.coalgebra.dim:
            raise AxiomError("algebra and coalgebra carriers differ")
        n = self.algebra.dim
        if self.S.shape != (n, n):
            raise AxiomError(f"S has shape {self.S.shape}, expected {(n, n)}")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"e{i}" for i in range(n)))

    @property
    def dim(self) -> int:
        return self.algebra.dim


@dataclass(frozen=True)
class HopfData:
    dim: int
    mu: LinMap
    eta: LinMap
    delta: LinMap
    eps: LinMap
    antipode: LinMap
    labels: tuple = ()


# -- algebra / coalgebra laws ---------------------------------------------

def _labels(labels, n):
    return list(labels) if labels else [f"e{i}" for i in range(n)]


def check_algebra(a: AlgebraData, labels=()) -> CheckReport:
    n, mu, eta, one = a.dim, a.mu, a.eta, identity(a.dim)
    lab = _labels(labels, n)
    rep = CheckReport()
    rep.add(compare("associativity", mu @ kron(mu, one), mu @ kron(one, mu),
                    ANCHORS["associativity"], tensor_labels(lab, 3)))
    left = mu @ kron(eta, one)
    right = mu @ kron(one, eta)
    res = compare("unit", left, one, ANCHORS["unit"], lab)
    if res.passed:
        res = compare("unit", right, one, ANCHORS["unit"], lab)
    rep.add(res)
    return rep


def check_coalgebra(c: CoalgebraData, labels=()) -> CheckReport:
    n, delta, eps, one = c.dim, c.delta, c.eps, identity(c.dim)
    lab = _labels(labels, n)
    rep = CheckReport()
    rep.add(compare("coassociativity", kron(delta, one) @ delta, kron(one, delta) @ delta,
                    ANCHORS["coassociativity"], lab))
    res = compare("counit", kron(eps, one) @ delta, one, ANCHORS["counit"], lab)
    if res.passed:
        res = compare("counit", kron(one, eps) @ delta, one, ANCHORS["counit"], lab)
    rep.add(res)
    return rep


def mu3(a: AlgebraData) -> LinMap:
    """Triple product ``A x A x A -> A`` (left association, checked against right)."""
    one = identity(a.dim)
    left = a.mu @ kron(a.mu, one)
    right = a.mu @ kron(one, a.mu)
    if left != right:
        j = left.first_difference(right)
        raise AxiomError(f"multiplication is not associative (basis index {j} of A⊗A⊗A)")
    return left


def delta3(c: CoalgebraData) -> LinMap:
    """Triple coproduct ``A -> A x A x A`` (left association, checked against right)."""
    one = identity(c.dim)
    left = kron(c.delta, one) @ c.delta
    right = kron(one, c.delta) @ c.delta
    if left != right:
        j = left.first_difference(right)
        raise AxiomError(f"comultiplication is not coassociative (basis index {j} of A)")
    return left


# -- VN-core axioms -------------------------------------------------------

def check_compat(v: VNCoreData) -> CheckReport:
    n = v.dim
    mu, delta = v.algebra.mu, v.coalgebra.delta
    one = identity(n)
    lhs = delta @ mu
    rhs = compose(kron(mu, mu), kron_all(one, symmetry(n, n), one), kron(delta, delta))
    return CheckReport([compare("compat", lhs, rhs, ANCHORS["compat"], tensor_labels(v.labels, 2))])


def _middle_S(v: VNCoreData) -> LinMap:
    one = identity(v.dim)
    return kron_all(one, v.S, one)


def check_vn(v: VNCoreData) -> CheckReport:
    try:
        m3, d3 = mu3(v.algebra), delta3(v.coalgebra)
    except AxiomError as exc:
        return CheckReport([CheckResult("vn", False, ANCHORS["vn"], detail=str(exc))])
    lhs = compose(m3, _middle_S(v), d3)
    return CheckReport([compare("vn", lhs, identity(v.dim), ANCHORS["vn"], list(v.labels))])


def check_unital(v: VNCoreData) -> CheckReport:
    try:
        d3 = delta3(v.coalgebra)
    except AxiomError as exc:
        return CheckReport([CheckResult("unital", False, ANCHORS["unital"], detail=str(exc))])
    one = identity(v.dim)
    # a -> a (x) eta(1), identifying A with A (x) k
    lhs = kron(one, v.algebra.eta)
    rhs = compose(kron(one, v.algebra.mu), _middle_S(v), d3)
    return CheckReport([compare("unital", lhs, rhs, ANCHORS["unital"], list(v.labels))])


def check_all(v: VNCoreData) -> CheckReport:
    rep = CheckReport()
    rep.extend(check_algebra(v.algebra, v.labels))
    rep.extend(check_coalgebra(v.coalgebra, v.labels))
    rep.extend(check_compat(v))
    rep.extend(check_vn(v))
    rep.extend(check_unital(v))
    return rep


# -- Hopf algebras and group algebras -------------------------------------

def check_hopf(h: HopfData) -> CheckReport:
    n = h.dim
    lab = _labels(h.labels, n)
    one = identity(n)
    rep = CheckReport()
    rep.extend(check_algebra(AlgebraData(n, h.mu, h.eta), lab))
    rep.extend(check_coalgebra(CoalgebraData(n, h.delta, h.eps), lab))
    rep.add(compare("bialgebra", h.delta @ h.mu,
                    compose(kron(h.mu, h.mu), kron_all(one, symmetry(n, n), one), kron(h.delta, h.delta)),
                    ANCHORS["compat"], tensor_labels(lab, 2)))
    ee = h.eta @ h.eps
    res = compare("antipode", compose(h.mu, kron(h.antipode, one), h.delta), ee, ANCHORS["antipode"], lab)
    if res.passed:
        res = compare("antipode", compose(h.mu, kron(one, h.antipode), h.delta), ee, ANCHORS["antipode"], lab)
    rep.add(res)
    return rep


def validate_group_table(table: Sequence[Sequence[int]]) -> tuple[int, list[int]]:
    """Return ``(identity, inverse_map)`` or raise :class:`NotAGroupError`."""
    n = len(table)
    if n == 0:
        raise NotAGroupError("empty table")
    for a, row in enumerate(table):
        if len(row) != n:
            raise NotAGroupError(f"row {a} has length {len(row)}, expected {n}", (a,))
        for b, x in enumerate(row):
            if not (isinstance(x, int) and 0 <= x < n):
                raise NotAGroupError(f"entry ({a},{b}) = {x!r} out of range", (a, b))
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise NotAGroupError(f"not associative at ({a},{b},{c})", (a, b, c))
    units = [e for e in range(n) if all(table[e][a] == a == table[a][e] for a in range(n))]
    if not units:
        raise NotAGroupError("no two-sided identity")
    e = units[0]
    inv = []
    for a in range(n):
        cands = [b for b in range(n) if table[a][b] == e == table[b][a]]
        if not cands:
            raise NotAGroupError(f"element {a} has no inverse", (a,))
        inv.append(cands[0])
    return e, inv


def group_algebra(table: Sequence[Sequence[int]], labels: Sequence[str] = ()) -> HopfData:
    """The group Hopf algebra on the basis of group elements."""
    e, inv = validate_group_table(table)
    n = len(table)
    mu = LinMap.from_sparse(n, n * n, {(table[a][b], a * n + b): 1 for a in range(n) for b in range(n)})
    eta = LinMap.from_sparse(n, 1, {(e, 0): 1})
    delta = LinMap.from_sparse(n * n, n, {(g * n + g, g): 1 for g in range(n)})
    eps = LinMap(1, n, [[1] * n])
    antipode = LinMap.from_sparse(n, n, {(inv[g], g): 1 for g in range(n)})
    return HopfData(n, mu, eta, delta, eps, antipode, tuple(labels) or tuple(f"g{i}" for i in range(n)))


def monoid_bialgebra(table: Sequence[Sequence[int]], S_map: Sequence[int],
                     labels: Sequence[str] = ()) -> VNCoreData:
    """Monoid algebra with grouplike basis and ``S`` induced by a map of the monoid.

    A bialgebra for any monoid table; a VN-core exactly when
    ``a * S(a) * a == a`` for every element.
    """
    n = len(table)
    e = next(x for x in range(n) if all(table[x][a] == a == table[a][x] for a in range(n)))
    mu = LinMap.from_sparse(n, n * n, {(table[a][b], a * n + b): 1 for a in range(n) for b in range(n)})
    eta = LinMap.from_sparse(n, 1, {(e, 0): 1})
    delta = LinMap.from_sparse(n * n, n, {(g * n + g, g): 1 for g in range(n)})
    eps = LinMap(1, n, [[1] * n])
    S = LinMap.from_sparse(n, n, {(S_map[g], g): 1 for g in range(n)})
    return VNCoreData(AlgebraData(n, mu, eta), CoalgebraData(n, delta, eps), S,
                      tuple(labels) or tuple(f"m{i}" for i in range(n)))


def hopf_to_vncore(h: HopfData) -> VNCoreData:
    hrep = check_hopf(h)
    if not hrep.passed:
        names = ", ".join(r.name for r in hrep.failures())
        raise AxiomError(f"input is not a Hopf algebra: {names} failed")
    v = VNCoreData(AlgebraData(h.dim, h.mu, h.eta), CoalgebraData(h.dim, h.delta, h.eps),
                   h.antipode, h.labels)
    rep = check_all(v)
    if not rep.passed:
        names = ", ".join(r.name for r in rep.failures())
        raise AxiomError(f"Hopf algebra failed VN-core checks: {names}")
    return v


def trivial_core() -> VNCoreData:
    one = scalar(1)
    return VNCoreData(AlgebraData(1, one, one), CoalgebraData(1, one, one), one, ("1",))


# -- built-in groups ------------------------------------------------------

def cyclic_table(n: int) -> list[list[int]]:
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def klein_table() -> list[list[int]]:
    return [[a ^ b for b in range(4)] for a in range(4)]


def symmetric3_table() -> tuple[list[list[int]], list[str]]:
    perms = sorted(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    # (p*q)(x) = p(q(x))
    table = [[index[tuple(p[q[x]] for x in range(3))] for q in perms] for p in perms]
    return table, ["".join(map(str, p)) for p in perms]


def small_groups() -> dict[str, tuple[list[list[int]], list[str]]]:
    """All groups of order at most 6, keyed by name."""
    groups = {f"Z{n}": (cyclic_table(n), [f"g{i}" for i in range(n)]) for n in (1, 2, 3, 4, 5, 6)}
    groups["V4"] = (klein_table(), ["e", "a", "b", "ab"])
    groups["S3"] = symmetric3_table()
    return groups
