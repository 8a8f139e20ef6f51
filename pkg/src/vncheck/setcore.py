"""VN-cores in Set, checked pointwise, and the exhaustive census on small carriers.

In Set a comultiplication is a pair of maps ``delta(a) = (left(a), right(a))``
and the counit is the unique map to the one-point set.  The counit laws
force ``left = right = id``, after which the axioms read

* VN:     ``a * S(a) * a == a``
* unital: ``S(a) * a == unit``

Tables are stored flat: ``table[a * n + b]`` is ``a * b``.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from . import kernels
from .vncore import ANCHORS, CheckReport, CheckResult

MAX_SIZE = 4


class SizeError(ValueError):
    pass


@dataclass(frozen=True)
class SetMagma:
    n: int
    table: tuple
    unit: int = 0

    def __post_init__(self):
        t = tuple(self.table)
        if t and isinstance(t[0], (list, tuple)):
            t = tuple(x for row in t for x in row)
        object.__setattr__(self, "table", t)
        if len(t) != self.n * self.n:
            raise ValueError(f"table has {len(t)} entries, expected {self.n * self.n}")
        if any(not 0 <= x < self.n for x in t):
            raise ValueError("table entry out of range")
        if not 0 <= self.unit < self.n:
            raise ValueError("unit out of range")

    def mul(self, a: int, b: int) -> int:
        return self.table[a * self.n + b]

    def rows(self) -> list[list[int]]:
        n = self.n
        return [list(self.table[a * n:(a + 1) * n]) for a in range(n)]


@dataclass(frozen=True)
class SetCoalgebraCandidate:
    n: int
    left: tuple
    right: tuple

    @classmethod
    def diagonal(cls, n: int) -> "SetCoalgebraCandidate":
        return cls(n, tuple(range(n)), tuple(range(n)))


@dataclass(frozen=True)
class SetVNCore:
    magma: SetMagma
    coalgebra: SetCoalgebraCandidate
    S: tuple

    def __post_init__(self):
        if not (self.magma.n == self.coalgebra.n == len(self.S)):
            raise ValueError("carrier sizes disagree")


def is_monoid(m: SetMagma) -> tuple[bool, tuple | None]:
    """``(True, None)`` or ``(False, witness)``.

    The witness is an ``(a, b, c)`` associativity failure or ``("unit", a)``
    for an element on which the declared unit does not act trivially.
    """
    n = m.n
    for a, b, c in itertools.product(range(n), repeat=3):
        if m.mul(m.mul(a, b), c) != m.mul(a, m.mul(b, c)):
            return False, (a, b, c)
    for a in range(n):
        if m.mul(m.unit, a) != a or m.mul(a, m.unit) != a:
            return False, ("unit", a)
    return True, None


def check_set_counit(c: SetCoalgebraCandidate) -> bool:
    # (eps x 1)delta = 1 reads right(a) = a; (1 x eps)delta = 1 reads left(a) = a
    return all(c.left[a] == a and c.right[a] == a for a in range(c.n))


def check_set_core(v: SetVNCore) -> CheckReport:
    m, L, R, S = v.magma, v.coalgebra.left, v.coalgebra.right, v.S
    n, mul = m.n, m.mul
    rep = CheckReport()

    bad = None
    for a, b in itertools.product(range(n), repeat=2):
        ab = mul(a, b)
        if (L[ab], R[ab]) != (mul(L[a], L[b]), mul(R[a], R[b])):
            bad = {"element": [a, b], "lhs": [L[ab], R[ab]], "rhs": [mul(L[a], L[b]), mul(R[a], R[b])]}
            break
    rep.add(CheckResult("compat", bad is None, ANCHORS["compat"], bad))

    # delta3 = (delta x 1)delta: a -> (L L a, R L a, R a)
    bad = None
    for a in range(n):
        got = mul(mul(L[L[a]], S[R[L[a]]]), R[a])
        if got != a:
            bad = {"element": a, "lhs": got, "rhs": a}
            break
    rep.add(CheckResult("vn", bad is None, ANCHORS["vn"], bad))

    bad = None
    for a in range(n):
        got = (L[L[a]], mul(S[R[L[a]]], R[a]))
        if got != (a, m.unit):
            bad = {"element": a, "lhs": list(got), "rhs": [a, m.unit]}
            break
    rep.add(CheckResult("unital", bad is None, ANCHORS["unital"], bad))
    return rep


# -- enumeration ----------------------------------------------------------

def _valid_maps(n: int, table: tuple, unit: int) -> tuple[list[tuple], bool]:
    """Maps S satisfying the unital axioms, and whether any S satisfies the VN axiom."""
    mul = lambda a, b: table[a * n + b]
    # VN and unital conditions are pointwise in a, so candidates factor per element
    vn_ok = [[s for s in range(n) if mul(mul(a, s), a) == a] for a in range(n)]
    unital_ok = [[s for s in vn_ok[a] if mul(s, a) == unit] for a in range(n)]
    return list(itertools.product(*unital_ok)), all(vn_ok)


def _scan_unit(args) -> list[tuple]:
    n, unit = args
    rows = []
    for t in kernels.associative_tables(n, unit):
        maps, regular = _valid_maps(n, t, unit)
        rows.append((t, unit, tuple(maps), regular))
    return rows


def _check_size(n: int) -> None:
    if not 1 <= n <= MAX_SIZE:
        raise SizeError(f"carrier size {n} outside the supported range 1..{MAX_SIZE}")


def classify_monoids(n: int, workers: int = 1) -> list[tuple]:
    """Every monoid table on ``n`` labeled points, as sorted
    ``(table, unit, unital_S_maps, admits_vn_S)`` rows."""
    _check_size(n)
    jobs = [(n, u) for u in range(n)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan_unit, jobs))
    else:
        parts = [_scan_unit(j) for j in jobs]
    return sorted(row for part in parts for row in part)


def enumerate_unital_cores(n: int, workers: int = 1) -> list[SetMagma]:
    """Monoid tables on ``n`` labeled points admitting a unital VN-core structure.

    Asserts that the result is exactly the set of labeled group tables.
    """
    rows = classify_monoids(n, workers)
    tables = [SetMagma(n, t, u) for t, u, maps, _ in rows if maps]
    got = {m.table for m in tables}
    expected = set(group_tables(n))
    if got != expected:
        raise AssertionError(f"n={n}: {len(got)} unital-core tables vs {len(expected)} group tables")
    return tables


def enumerate_vn_cores(n: int, workers: int = 1) -> list[SetMagma]:
    """Monoid tables admitting some S with ``a * S(a) * a == a`` (regular monoids)."""
    return [SetMagma(n, t, u) for t, u, _, regular in classify_monoids(n, workers) if regular]


# -- independent group oracle ---------------------------------------------

def group_tables(n: int) -> list[tuple]:
    """Labeled group tables on ``range(n)``, sorted.

    Built row by row as Latin squares, then filtered by associativity.
    Shares no code with the monoid enumeration.
    """
    perms = list(itertools.permutations(range(n)))
    found = []

    def extend(rows, cols_used):
        if len(rows) == n:
            flat = tuple(x for r in rows for x in r)
            if all(flat[flat[a * n + b] * n + c] == flat[a * n + flat[b * n + c]]
                   for a in range(n) for b in range(n) for c in range(n)):
                found.append(flat)
            return
        for p in perms:
            if all(p[j] not in cols_used[j] for j in range(n)):
                extend(rows + [p], [cols_used[j] | {p[j]} for j in range(n)])

    extend([], [frozenset()] * n)
    return sorted(found)


def inverse_map(table: tuple, n: int) -> tuple:
    e = next(u for u in range(n) if all(table[u * n + a] == a == table[a * n + u] for a in range(n)))
    return tuple(next(b for b in range(n) if table[b * n + a] == e) for a in range(n))


def canonical_form(table: tuple, n: int) -> tuple:
    """Lexicographically least relabeling; equal iff the tables are isomorphic."""
    best = None
    for p in itertools.permutations(range(n)):
        inv = [0] * n
        for i, x in enumerate(p):
            inv[x] = i
        t = tuple(p[table[inv[a] * n + inv[b]]] for a in range(n) for b in range(n))
        if best is None or t < best:
            best = t
    return best


def isomorphism_classes(tables: Sequence[tuple], n: int) -> int:
    return len({canonical_form(t, n) for t in tables})


def census(n: int, workers: int = 1) -> dict:
    """Machine-readable census for one carrier size."""
    rows = classify_monoids(n, workers)
    unital = [(t, maps) for t, _, maps, _ in rows if maps]
    tables = [t for t, _ in unital]
    groups = group_tables(n)
    unique = all(len(maps) == 1 and maps[0] == inverse_map(t, n) for t, maps in unital)
    return {
        "n": n,
        "backend": kernels.backend,
        "monoid_tables": len(rows),
        "unital_core_tables": [list(t) for t in tables],
        "group_tables": len(groups),
        "matches_group_oracle": sorted(tables) == groups,
        "unique_antipode_is_inverse": unique,
        "isomorphism_classes": isomorphism_classes(tables, n),
        "vn_core_tables": sum(1 for row in rows if row[3]),
    }
