import itertools

import pytest

from vncheck import kernels
from vncheck._kernels_py import associative_tables as py_tables


def test_backend_selected():
    assert kernels.backend in kernels.BACKENDS
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")


@pytest.mark.skipif("compiled" not in kernels.BACKENDS, reason="extension not built")
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_backends_agree(n):
    c, p = kernels.get_backend("compiled"), kernels.get_backend("python")
    for unit in range(n):
        assert sorted(c.associative_tables(n, unit)) == sorted(p.associative_tables(n, unit))


@pytest.mark.parametrize("name", sorted(kernels.BACKENDS))
def test_is_associative_exhaustive_n2(name):
    k = kernels.get_backend(name)
    for t in itertools.product(range(2), repeat=4):
        mul = lambda a, b: t[a * 2 + b]
        expected = all(mul(mul(a, b), c) == mul(a, mul(b, c)) for a, b, c in itertools.product(range(2), repeat=3))
        assert k.is_associative(t, 2) == expected


def test_tables_fix_unit():
    for t in py_tables(3, 1):
        assert t[3:6] == (0, 1, 2) and t[1::3] == (0, 1, 2)
