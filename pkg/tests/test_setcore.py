import itertools
from collections import Counter

import pytest

from vncheck.setcore import (
    SetCoalgebraCandidate, SetMagma, SetVNCore, SizeError, canonical_form, census,
    check_set_core, check_set_counit, classify_monoids, enumerate_unital_cores,
    enumerate_vn_cores, group_tables, inverse_map, is_monoid, isomorphism_classes,
)


def brute_monoids(n):
    # every table and every unit, no shared code with the kernels
    out = set()
    for t in itertools.product(range(n), repeat=n * n):
        mul = lambda a, b: t[a * n + b]
        if not all(mul(mul(a, b), c) == mul(a, mul(b, c)) for a, b, c in itertools.product(range(n), repeat=3)):
            continue
        for u in range(n):
            if all(mul(u, a) == a == mul(a, u) for a in range(n)):
                out.add((t, u))
    return out


def z3_core(S=(0, 2, 1)):
    m = SetMagma(3, [[0, 1, 2], [1, 2, 0], [2, 0, 1]])
    return SetVNCore(m, SetCoalgebraCandidate.diagonal(3), S)


def test_is_monoid_examples():
    assert is_monoid(SetMagma(2, [[0, 1], [1, 1]])) == (True, None)
    ok, w = is_monoid(SetMagma(2, [[1, 0], [0, 0]]))
    assert not ok and len(w) == 3
    # left-zero semigroup: associative, no two-sided unit
    assert is_monoid(SetMagma(2, [[0, 0], [1, 1]]))[1][0] == "unit"


def test_is_monoid_exhaustive_n2():
    expected = brute_monoids(2)
    got = {(t, u) for t in itertools.product(range(2), repeat=4) for u in range(2)
           if is_monoid(SetMagma(2, t, u))[0]}
    assert got == expected


def test_counit_scan_n3():
    hits = [(l, r) for l in itertools.product(range(3), repeat=3) for r in itertools.product(range(3), repeat=3)
            if check_set_counit(SetCoalgebraCandidate(3, l, r))]
    assert hits == [((0, 1, 2), (0, 1, 2))]


def test_set_core_z3_inverse():
    assert check_set_core(z3_core()).passed


def test_set_core_z3_identity_S():
    rep = check_set_core(z3_core((0, 1, 2)))
    assert [r.name for r in rep.failures()] == ["vn", "unital"]
    assert rep["unital"].witness["element"] == 1


def test_set_core_bad_coalgebra():
    # left leg constant at the non-unit: L(0*0) = 1 but L(0)*L(0) = 0
    m = SetMagma(2, [[0, 1], [1, 0]])
    rep = check_set_core(SetVNCore(m, SetCoalgebraCandidate(2, (1, 1), (0, 1)), (0, 1)))
    assert not rep["compat"].passed


def test_magma_shape_errors():
    with pytest.raises(ValueError):
        SetMagma(2, [0, 1, 1])
    with pytest.raises(ValueError):
        SetMagma(2, [0, 1, 1, 2])


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_unital_cores_are_groups(n):
    cores = enumerate_unital_cores(n)
    assert sorted(m.table for m in cores) == group_tables(n)
    for t, _, maps, _ in classify_monoids(n):
        if maps:
            assert maps == (inverse_map(t, n),)


@pytest.mark.parametrize("n,monoids,groups,classes", [(1, 1, 1, 1), (2, 4, 2, 1), (3, 33, 3, 1), (4, 624, 16, 2)])
def test_census_counts(n, monoids, groups, classes):
    c = census(n)
    assert (c["monoid_tables"], c["group_tables"], c["isomorphism_classes"]) == (monoids, groups, classes)
    assert c["matches_group_oracle"] and c["unique_antipode_is_inverse"]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_monoid_counts_vs_brute_force(n):
    assert {(t, u) for t, u, _, _ in classify_monoids(n)} == brute_monoids(n)


def test_group_orbits_n4():
    tables = group_tables(4)
    orbits = Counter(canonical_form(t, 4) for t in tables)
    assert sorted(orbits.values()) == [4, 12]
    assert isomorphism_classes(tables, 4) == 2


def test_vn_cores_contain_semilattice():
    tables = {m.table for m in enumerate_vn_cores(2)}
    assert (0, 1, 1, 1) in tables
    assert set(group_tables(2)) < tables


@pytest.mark.parametrize("n", [0, 5])
def test_size_limits(n):
    with pytest.raises(SizeError):
        enumerate_unital_cores(n)


def test_workers_agree():
    assert classify_monoids(3, workers=2) == classify_monoids(3, workers=1)
