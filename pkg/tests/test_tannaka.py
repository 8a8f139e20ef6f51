import itertools

import pytest

from vncheck.exactla import (
    LinMap, WellDefinednessError, identity, is_invertible, kron, scalar,
)
from vncheck.library import (
    MONOIDAL, klein_characters, perturb_Ue, trivial, z2_characters, z2_copy,
    z2_representations, z3_characters,
)
from vncheck.tannaka import (
    DimensionError, FunctorStructure, Generator, MonoidalPresentation, Relation,
    ValidationError, build_antipode, build_structure, check_e_i_axiom, check_e_r_axiom,
    check_outer_diagram, check_trace, coend_isomorphism, compute_coend, permute_objects,
    run_pipeline, trace_map, validate, verify_conclusion,
)
from vncheck.vncore import check_all, cyclic_table, group_algebra, klein_table


def algebra(p, f):
    return build_antipode(p, f, build_structure(p, f, compute_coend(p, f)))


def idempotent(extra=(), i_scale=1):
    # functions on two points: X (x) X = X, r multiplies coordinatewise, i is the diagonal
    one = identity(1)
    r_xx = LinMap.from_sparse(2, 4, {(0, 0): 1, (1, 3): 1})
    i_xx = LinMap.from_sparse(4, 2, {(0, 0): i_scale, (3, 1): i_scale})
    p = MonoidalPresentation(("I", "X"), (1, 2), 0, ((0, 1), (1, 1)), (0, 1), tuple(extra))
    f = FunctorStructure(
        r={(0, 0): one, (0, 1): identity(2), (1, 0): identity(2), (1, 1): r_xx}, r0=one,
        i={(0, 0): one, (0, 1): identity(2), (1, 0): identity(2), (1, 1): i_xx}, i0=one,
        u={0: one, 1: identity(2)}, Ue={0: one, 1: LinMap.from_rows([[1, 1]])})
    return p, f


@pytest.mark.parametrize("name", sorted(MONOIDAL))
def test_pipeline_passes(name):
    p, f = MONOIDAL[name]()
    res = run_pipeline(p, f)
    assert res.passed, [(s.stage, s.error, [r.name for r in s.report.failures()]) for s in res.stages]
    assert [s.stage for s in res.stages][-1] == "verify_conclusion"


def test_idempotent_pairing_needs_whiskering():
    # validation passes, but e_X alone does not generate an ideal of relations
    res = run_pipeline(*idempotent())
    assert [s.stage for s in res.stages if s.passed][:4] == ["validate", "e_axioms", "trace", "compute_coend"]
    assert res.error_stage.stage == "build_structure" and "'e_X'" in res.error_stage.error


@pytest.mark.parametrize("factory,dim", [(trivial, 1), (z2_characters, 2), (z3_characters, 3),
                                         (klein_characters, 4), (z2_copy, 2)])
def test_coend_dims(factory, dim):
    p, f = factory()
    assert compute_coend(p, f).dim == dim


def test_z2_representations_dim():
    assert compute_coend(z2_representations()).dim == 2


def test_redundant_generators_leave_coend_unchanged():
    plain = compute_coend(z2_representations()).quotient
    redundant = compute_coend(z2_representations(redundant=True)).quotient
    assert redundant.dim == plain.dim == 2
    assert redundant.q == plain.q and redundant.s == plain.s


def test_unwhiskered_copy_is_not_well_defined():
    p, f = z2_copy(whiskered=False)
    with pytest.raises(WellDefinednessError, match="'phi'"):
        build_structure(p, f, compute_coend(p, f))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_trace(n):
    assert trace_map(n) == scalar(n)


def test_check_trace_report():
    rep = check_trace(range(1, 6))
    assert rep.passed and [r.name for r in rep.results] == [f"trace[{n}]" for n in range(1, 6)]


def test_validate_dim_zero():
    p = MonoidalPresentation(("I", "Z"), (1, 0))
    with pytest.raises(DimensionError) as exc:
        validate(p)
    assert exc.value.location == "Z"


def test_validate_split_failure():
    p, f = idempotent(i_scale=2)
    with pytest.raises(ValidationError) as exc:
        validate(p, f)
    assert exc.value.check == "split" and exc.value.location == "(X,X)"


def test_validate_relation_failure():
    g = Generator("g", 0, 0, scalar(2))
    p, _ = idempotent()
    p = MonoidalPresentation(p.objects, p.dims, p.unit, p.tensor, p.dual, (g,),
                             (Relation(("g", "g"), ("g",)),))
    with pytest.raises(ValidationError) as exc:
        validate(p)
    assert exc.value.check == "relations"


def test_validate_naturality_failure():
    nil = Generator("N", 1, 1, LinMap.from_rows([[0, 1], [0, 0]]))
    p, f = idempotent([nil])
    with pytest.raises(ValidationError) as exc:
        validate(p, f)
    assert exc.value.check == "naturality_r"
    assert exc.value.location == "N left X"


def test_validate_passes_report():
    p, f = z2_copy()
    rep = validate(p, f)
    assert rep.passed and "naturality" in rep


@pytest.mark.parametrize("name", sorted(MONOIDAL))
def test_axioms_hold(name):
    p, f = MONOIDAL[name]()
    assert check_e_r_axiom(p, f).passed and check_e_i_axiom(p, f).passed


@pytest.mark.parametrize("name", sorted(MONOIDAL))
def test_perturbation_located(name):
    p, f = MONOIDAL[name]()
    ca = algebra(p, f)
    target = len(p.objects) - 1
    g = perturb_Ue(f, target)
    obj = p.objects[target]
    er, ei = check_e_r_axiom(p, g), check_e_i_axiom(p, g)
    assert [r.name for r in er.failures()] == [f"e_r[{obj}]"]
    assert [r.name for r in ei.failures()] == [f"e_i[{obj}]"]
    assert er[f"e_r[{obj}]"].witness["object"] == obj
    outer = check_outer_diagram(p, g, ca, target)
    assert {r.name for r in outer.failures()} == {f"region_e_i[{obj}]", f"region_e_r[{obj}]"}
    for a in range(len(p.objects) - 1):
        assert check_outer_diagram(p, g, ca, a).passed


@pytest.mark.parametrize("name", sorted(MONOIDAL))
def test_outer_diagram(name):
    p, f = MONOIDAL[name]()
    ca = algebra(p, f)
    for a in range(len(p.objects)):
        assert check_outer_diagram(p, f, ca, a).passed


def test_antipode_values():
    assert algebra(*z2_characters()).S == identity(2)
    assert algebra(*klein_characters()).S == identity(4)
    assert algebra(*z3_characters()).S == LinMap.from_rows([[1, 0, 0], [0, 0, 1], [0, 1, 0]])


@pytest.mark.parametrize("factory,table", [(z2_characters, cyclic_table(2)), (z3_characters, cyclic_table(3)),
                                           (klein_characters, klein_table())])
def test_structure_constants_match_group_algebra(factory, table):
    ca = algebra(*factory())
    h = group_algebra(table)
    assert (ca.mu, ca.eta, ca.delta, ca.eps, ca.S) == (h.mu, h.eta, h.delta, h.eps, h.antipode)


def test_z2_copy_is_group_algebra():
    ca = algebra(*z2_copy())
    h = group_algebra(cyclic_table(2))
    assert (ca.mu, ca.eta, ca.delta, ca.eps, ca.S) == (h.mu, h.eta, h.delta, h.eps, h.antipode)


@pytest.mark.parametrize("name", ["z2_copy", "z3_characters"])
def test_basis_independence(name):
    p, f = MONOIDAL[name]()
    old = algebra(p, f)
    for perm in itertools.permutations(range(len(p.objects))):
        q, g = permute_objects(p, f, perm)
        new = algebra(q, g)
        phi = coend_isomorphism(old.coend, new.coend, perm)
        assert is_invertible(phi)
        assert new.mu @ kron(phi, phi) == phi @ old.mu
        assert new.eta == phi @ old.eta
        assert new.delta @ phi == kron(phi, phi) @ old.delta
        assert new.eps @ phi == old.eps
        assert new.S @ phi == phi @ old.S
        assert check_all(new.as_vncore()).passed


@pytest.mark.parametrize("name", ["trivial", "z2_characters", "klein_characters"])
def test_conclusion(name):
    assert verify_conclusion(algebra(*MONOIDAL[name]())).passed


def test_pipeline_stops_at_validate():
    res = run_pipeline(MonoidalPresentation(("I",), (0,)), None)
    assert [s.stage for s in res.stages] == ["validate"]
    assert res.error_stage.error.startswith("DimensionError")


def test_pipeline_coend_only():
    res = run_pipeline(z2_representations(), None)
    assert [s.stage for s in res.stages] == ["validate", "compute_coend"]
    assert res.coend.dim == 2 and res.passed


def test_pipeline_records_well_definedness():
    p, f = z2_copy(whiskered=False)
    res = run_pipeline(p, f)
    assert res.error_stage.stage == "build_structure"
    assert "WellDefinednessError" in res.error_stage.error
