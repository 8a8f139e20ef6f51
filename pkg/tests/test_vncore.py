import itertools

import pytest

from vncheck.exactla import LinMap, basis_vector, identity, kron, kron_all, scalar
from vncheck.vncore import (
    AlgebraData, AxiomError, CoalgebraData, NotAGroupError, VNCoreData, check_all,
    check_compat, check_hopf, check_unital, check_vn, cyclic_table, delta3,
    group_algebra, hopf_to_vncore, monoid_bialgebra, mu3, small_groups, trivial_core,
)

GROUPS = small_groups()


def with_S(v, S):
    return VNCoreData(v.algebra, v.coalgebra, S, v.labels)


def perm_matrix(images):
    n = len(images)
    return LinMap.from_sparse(n, n, {(images[g], g): 1 for g in range(n)})


@pytest.fixture
def z3():
    return hopf_to_vncore(group_algebra(cyclic_table(3)))


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_mu3_folds_group_table(name):
    table, _ = GROUPS[name]
    n = len(table)
    h = group_algebra(table)
    m3 = mu3(AlgebraData(n, h.mu, h.eta))
    for a, b, c in itertools.product(range(n), repeat=3):
        col = m3.column((a * n + b) * n + c)
        assert col == basis_vector(n, table[table[a][b]][c]).column(0)


def test_mu3_trivial():
    assert mu3(trivial_core().algebra) == scalar(1)


def test_mu3_z2_ggg():
    h = group_algebra(cyclic_table(2))
    # g (x) g (x) g has flat index 1*4 + 1*2 + 1 = 7
    assert mu3(AlgebraData(2, h.mu, h.eta)).column(7) == (0, 1)


def test_mu3_rejects_non_associative():
    # a*b table [[1,0],[0,0]]: (0*0)*1 = 0 but 0*(0*1) = 1
    table = [[1, 0], [0, 0]]
    mu = LinMap.from_sparse(2, 4, {(table[a][b], 2 * a + b): 1 for a in range(2) for b in range(2)})
    with pytest.raises(AxiomError):
        mu3(AlgebraData(2, mu, LinMap.from_rows([[1], [0]])))


def test_delta3_rejects_non_coassociative():
    # e0 -> e0 e0 + e1 e1, e1 -> e0 e1
    delta = LinMap.from_sparse(4, 2, {(0, 0): 1, (3, 0): 1, (1, 1): 1})
    with pytest.raises(AxiomError):
        delta3(CoalgebraData(2, delta, LinMap.from_rows([[1, 1]])))


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_mu3_delta3_association_independent(name):
    h = group_algebra(GROUPS[name][0])
    n = h.dim
    one = identity(n)
    assert mu3(AlgebraData(n, h.mu, h.eta)) == h.mu @ kron(one, h.mu)
    assert delta3(CoalgebraData(n, h.delta, h.eps)) == kron(one, h.delta) @ h.delta


def test_compat_group_algebra_z2():
    assert check_compat(hopf_to_vncore(group_algebra(cyclic_table(2)))).passed


def test_compat_trivial():
    assert check_compat(trivial_core()).passed


def test_compat_failure_has_witness():
    # componentwise product on idempotents p0, p1; delta sends both to p0 (x) p0.
    # delta mu (p0 (x) p1) = 0 while the right side gives p0 (x) p0.
    mu = LinMap.from_sparse(2, 4, {(0, 0): 1, (1, 3): 1})
    eta = LinMap.from_rows([[1], [1]])
    delta = LinMap.from_sparse(4, 2, {(0, 0): 1, (0, 1): 1})
    eps = LinMap.from_rows([[1, 0]])
    v = VNCoreData(AlgebraData(2, mu, eta), CoalgebraData(2, delta, eps), identity(2))
    res = check_compat(v)["compat"]
    assert not res.passed
    assert res.witness["basis_index"] == 1
    assert res.witness["lhs"] == ["0"] * 4
    assert res.witness["rhs"] == ["1", "0", "0", "0"]


def test_vn_z3_antipode(z3):
    assert check_vn(z3).passed


def test_vn_trivial():
    assert check_vn(trivial_core()).passed


def test_vn_z3_identity_S_fails(z3):
    # g * S(g) * g = g^3 = e, which differs from g for g != e
    res = check_vn(with_S(z3, identity(3)))["vn"]
    assert not res.passed
    assert res.witness["basis"] == "g1"
    assert res.witness["lhs"] == ["1", "0", "0"]


def test_vn_without_unital_semilattice():
    # {e, z} with z*z = z and S = id: a * a * a = a holds, S(z) * z = z != e
    v = monoid_bialgebra([[0, 1], [1, 1]], [0, 1], ["e", "z"])
    rep = check_all(v)
    assert [r.name for r in rep.failures()] == ["unital"]
    assert rep["unital"].witness["basis"] == "z"


def test_unital_z3_antipode(z3):
    assert check_unital(z3).passed


def test_unital_z3_identity_S_fails(z3):
    res = check_unital(with_S(z3, identity(3)))["unital"]
    assert not res.passed
    assert res.witness["basis"] == "g1"
    # lhs g1 (x) g0 at flat index 3; rhs g1 (x) g1^2 = g1 (x) g2 at flat index 5
    assert res.witness["lhs"] == ["0", "0", "0", "1", "0", "0", "0", "0", "0"]
    assert res.witness["rhs"] == ["0", "0", "0", "0", "0", "1", "0", "0", "0"]


def test_unital_trivial():
    assert check_unital(trivial_core()).passed


def test_check_all_s3():
    table, labels = GROUPS["S3"]
    rep = check_all(hopf_to_vncore(group_algebra(table, labels)))
    assert rep.passed
    assert [r.name for r in rep.results] == [
        "associativity", "unit", "coassociativity", "counit", "compat", "vn", "unital"]


def test_check_all_z3_identity(z3):
    rep = check_all(with_S(z3, identity(3)))
    assert [r.name for r in rep.failures()] == ["vn", "unital"]


def test_check_all_trivial():
    assert check_all(trivial_core()).passed


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_witness_reproduces_failure(name):
    table, labels = GROUPS[name]
    v = hopf_to_vncore(group_algebra(table, labels))
    n = v.dim
    if all(table[a][a] == table[0][0] for a in range(n)):
        pytest.skip("every element is self-inverse, so identity S is the antipode")
    res = check_unital(with_S(v, identity(n)))["unital"]
    assert not res.passed
    j = res.witness["basis_index"]
    e = basis_vector(n, j)
    lhs = kron(identity(n), v.algebra.eta) @ e
    rhs = kron(identity(n), v.algebra.mu) @ kron_all(identity(n), identity(n), identity(n)) @ delta3(v.coalgebra) @ e
    assert lhs != rhs
    assert [str(x) for x in lhs.column(0)] == res.witness["lhs"]
    assert [str(x) for x in rhs.column(0)] == res.witness["rhs"]


def test_group_algebra_z2():
    h = group_algebra(cyclic_table(2))
    assert h.dim == 2 and h.antipode == identity(2)


def test_group_algebra_z3():
    h = group_algebra(cyclic_table(3))
    assert h.antipode == LinMap.from_rows([[1, 0, 0], [0, 0, 1], [0, 1, 0]])


@pytest.mark.parametrize("table,fragment", [
    ([[0, 1], [1, 1]], "no inverse"),
    ([[1, 0], [0, 0]], "not associative"),
    ([[0, 0], [0, 0]], "identity"),
    ([[0, 5], [1, 0]], "out of range"),
])
def test_group_algebra_rejects(table, fragment):
    with pytest.raises(NotAGroupError, match=fragment):
        group_algebra(table)


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_hopf_implies_unital_vn(name):
    table, labels = GROUPS[name]
    h = group_algebra(table, labels)
    assert check_hopf(h).passed
    v = hopf_to_vncore(h)
    assert check_compat(v).passed and check_vn(v).passed and check_unital(v).passed


def test_hopf_to_vncore_rejects_bad_antipode():
    h = group_algebra(cyclic_table(3))
    bad = type(h)(h.dim, h.mu, h.eta, h.delta, h.eps, identity(3), h.labels)
    with pytest.raises(AxiomError, match="antipode"):
        hopf_to_vncore(bad)


def test_trivial_hopf():
    v = hopf_to_vncore(group_algebra([[0]]))
    assert v.dim == 1 and check_all(v).passed


@pytest.mark.parametrize("name", ["Z3", "Z4", "V4", "S3"])
def test_unital_exactly_at_inverse_map(name):
    # among all S induced by maps of the group, the unital axiom holds only for g -> g^-1
    table, _ = GROUPS[name]
    n = len(table)
    v = hopf_to_vncore(group_algebra(table))
    e = next(x for x in range(n) if table[x] == list(range(n)))
    inverse = tuple(next(b for b in range(n) if table[b][a] == e) for a in range(n))
    maps = itertools.product(range(n), repeat=n) if n <= 4 else itertools.permutations(range(n))
    for sigma in maps:
        w = with_S(v, perm_matrix(sigma))
        unital = check_unital(w).passed
        assert unital == (sigma == inverse)
        if unital:
            assert check_vn(w).passed
