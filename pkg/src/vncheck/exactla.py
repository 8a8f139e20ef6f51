"""Exact rational linear algebra.

Matrices are dense grids of :class:`fractions.Fraction`.  Tensor products
use the row-major flat index convention: ``e_i (x) e_j`` of ``k^m (x) k^n``
sits at flat index ``i * n + j`` (left factor slow).  Every module in the
package relies on this convention.

Products skip zero entries, so permutation matrices and grouplike
comultiplications stay cheap even when their dense shape is large.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


class WellDefinednessError(ValueError):
    """A map out of an ambient space does not kill a quotient relation."""

    def __init__(self, message: str, relation_index: int, value: tuple = ()):
        super().__init__(message)
        self.relation_index = relation_index
        self.value = value


class ShapeError(ValueError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


class LinMap:
    """An immutable ``rows x cols`` matrix over the rationals.

    ``rows`` is the codomain dimension and ``cols`` the domain dimension,
    so ``f @ g`` is the composite "f after g".
    """

    __slots__ = ("rows", "cols", "_dense", "_sparse", "_hash")

    def __init__(self, rows: int, cols: int, data: Sequence[Sequence] | None = None):
        if rows < 0 or cols < 0:
            raise ShapeError(f"negative shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        if data is None:
            self._dense = tuple((ZERO,) * cols for _ in range(rows))
        else:
            if len(data) != rows or any(len(r) != cols for r in data):
                raise ShapeError(f"entries do not form a {rows}x{cols} grid")
            self._dense = tuple(tuple(as_fraction(x) for x in r) for r in data)
        self._sparse = None
        self._hash = None

    @classmethod
    def _raw(cls, rows: int, cols: int, data: tuple | None, sparse: tuple | None = None) -> "LinMap":
        # trusted input: data is a tuple of tuples of Fractions with the right shape;
        # sparse lists exactly the nonzero entries per row in column order.
        # At least one of them is given, the other is derived on demand.
        m = cls.__new__(cls)
        m.rows, m.cols, m._dense = rows, cols, data
        m._sparse = sparse
        m._hash = None
        return m

    @classmethod
    def from_rows(cls, data: Sequence[Sequence]) -> "LinMap":
        data = [list(r) for r in data]
        if not data:
            raise ShapeError("from_rows needs at least one row; use LinMap(0, n)")
        return cls(len(data), len(data[0]), data)

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Sequence]) -> "LinMap":
        cols = len(columns)
        grid = [[columns[j][i] for j in range(cols)] for i in range(rows)]
        return cls(rows, cols, grid)

    @classmethod
    def from_sparse(cls, rows: int, cols: int, entries: dict) -> "LinMap":
        nz = [[] for _ in range(rows)]
        for (i, j), v in sorted(entries.items()):
            if not (0 <= i < rows and 0 <= j < cols):
                raise ShapeError(f"entry ({i}, {j}) outside a {rows}x{cols} map")
            v = as_fraction(v)
            if v:
                nz[i].append((j, v))
        return cls._raw(rows, cols, None, tuple(map(tuple, nz)))

    # -- access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    @property
    def _data(self) -> tuple:
        if self._dense is None:
            grid = []
            for r in self._sparse:
                row = [ZERO] * self.cols
                for j, v in r:
                    row[j] = v
                grid.append(tuple(row))
            self._dense = tuple(grid)
        return self._dense

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def sparse_rows(self) -> tuple:
        """Per row, the ``(col, value)`` pairs with nonzero value."""
        if self._sparse is None:
            self._sparse = tuple(
                tuple((j, v) for j, v in enumerate(r) if v) for r in self._dense
            )
        return self._sparse

    def nnz(self) -> int:
        return sum(len(r) for r in self.sparse_rows())

    # -- algebra ----------------------------------------------------------

    def __matmul__(self, other: "LinMap") -> "LinMap":
        if not isinstance(other, LinMap):
            return NotImplemented
        if self.cols != other.rows:
            raise ShapeError(f"cannot compose {self.shape} after {other.shape}")
        n = other.cols
        b_rows = other.sparse_rows()
        nz = []
        for a_row in self.sparse_rows():
            acc = {}
            for k, a in a_row:
                for j, b in b_rows[k]:
                    acc[j] = acc.get(j, ZERO) + a * b
            nz.append(tuple((j, acc[j]) for j in sorted(acc) if acc[j]))
        return LinMap._raw(self.rows, n, None, tuple(nz))

    def __add__(self, other: "LinMap") -> "LinMap":
        self._same_shape(other)
        return LinMap._raw(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self._data, other._data)
        ))

    def __sub__(self, other: "LinMap") -> "LinMap":
        self._same_shape(other)
        return LinMap._raw(self.rows, self.cols, tuple(
            tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(self._data, other._data)
        ))

    def __neg__(self) -> "LinMap":
        return self.scale(-1)

    def scale(self, c) -> "LinMap":
        c = as_fraction(c)
        return LinMap._raw(self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self._data))

    def __rmul__(self, c) -> "LinMap":
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinMap):
            return NotImplemented
        return self.shape == other.shape and self.sparse_rows() == other.sparse_rows()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.sparse_rows()))
        return self._hash

    def __repr__(self) -> str:
        if self.rows * self.cols <= 36:
            body = "; ".join(" ".join(str(x) for x in r) for r in self._data)
            return f"LinMap({self.rows}x{self.cols}: [{body}])"
        return f"LinMap({self.rows}x{self.cols}, nnz={self.nnz()})"

    def _same_shape(self, other: "LinMap") -> None:
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise ShapeError(f"vector of length {len(v)} for a map with {self.cols} columns")
        v = [as_fraction(x) for x in v]
        return tuple(sum((a * v[j] for j, a in r), ZERO) for r in self.sparse_rows())

    def first_difference(self, other: "LinMap") -> int | None:
        """Index of the first domain basis vector on which the maps differ."""
        self._same_shape(other)
        for j in range(self.cols):
            if any(ra[j] != rb[j] for ra, rb in zip(self._data, other._data)):
                return j
        return None

    def is_zero(self) -> bool:
        return all(not r for r in self.sparse_rows())


def identity(n: int) -> LinMap:
    return LinMap._raw(n, n, None, tuple(((i, ONE),) for i in range(n)))


def zeros(rows: int, cols: int) -> LinMap:
    return LinMap(rows, cols)


def scalar(c) -> LinMap:
    return LinMap._raw(1, 1, ((as_fraction(c),),))


def dual(f: LinMap) -> LinMap:
    """Transpose: the dual map in the dual bases."""
    nz = [[] for _ in range(f.cols)]
    for i, r in enumerate(f.sparse_rows()):
        for j, v in r:
            nz[j].append((i, v))
    return LinMap._raw(f.cols, f.rows, None, tuple(map(tuple, nz)))


def kron(f: LinMap, g: LinMap) -> LinMap:
    rows, cols = f.rows * g.rows, f.cols * g.cols
    nz = [[] for _ in range(rows)]
    g_sparse = g.sparse_rows()
    for i, f_row in enumerate(f.sparse_rows()):
        for j, a in f_row:
            base = j * g.cols
            unit = a == ONE
            for k, g_row in enumerate(g_sparse):
                out = nz[i * g.rows + k]
                if unit:
                    out.extend((base + l, b) for l, b in g_row)
                else:
                    out.extend((base + l, a * b) for l, b in g_row)
    return LinMap._raw(rows, cols, None, tuple(map(tuple, nz)))


def kron_all(*maps: LinMap) -> LinMap:
    out = maps[0]
    for m in maps[1:]:
        out = kron(out, m)
    return out


def compose(*maps: LinMap) -> LinMap:
    """``compose(f, g, h) == f @ g @ h`` evaluated right to left."""
    out = maps[-1]
    for m in reversed(maps[:-1]):
        out = m @ out
    return out


def symmetry(m: int, n: int) -> LinMap:
    """The swap ``k^m (x) k^n -> k^n (x) k^m``, ``e_i (x) e_j -> e_j (x) e_i``."""
    return LinMap.from_sparse(m * n, m * n, {(j * m + i, i * n + j): 1
                                             for i in range(m) for j in range(n)})


def evaluation(n: int) -> LinMap:
    """``V* (x) V -> k``, ``e_i* (x) e_j -> delta_ij``."""
    return LinMap.from_sparse(1, n * n, {(0, i * n + i): 1 for i in range(n)})


def coevaluation(n: int) -> LinMap:
    """``k -> V (x) V*``, ``1 -> sum_j e_j (x) e_j*``."""
    return LinMap.from_sparse(n * n, 1, {(j * n + j, 0): 1 for j in range(n)})


def basis_vector(n: int, i: int) -> LinMap:
    return LinMap.from_sparse(n, 1, {(i, 0): 1})


def direct_sum_inclusion(dims: Sequence[int], k: int) -> LinMap:
    total = sum(dims)
    off = sum(dims[:k])
    return LinMap.from_sparse(total, dims[k], {(off + i, i): 1 for i in range(dims[k])})


def hstack(blocks: Sequence[LinMap]) -> LinMap:
    rows = blocks[0].rows
    if any(b.rows != rows for b in blocks):
        raise ShapeError("hstack needs equal row counts")
    data = tuple(tuple(x for b in blocks for x in b.row(i)) for i in range(rows))
    return LinMap._raw(rows, sum(b.cols for b in blocks), data)


# -- elimination ----------------------------------------------------------

def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form of the matrix with the given rows.

    Returns the nonzero reduced rows and their pivot columns.
    """
    m = [[as_fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(f: LinMap) -> int:
    return len(rref(f.tolist(), f.cols)[1])


def inverse(f: LinMap) -> LinMap:
    if f.rows != f.cols:
        raise ShapeError(f"cannot invert a {f.rows}x{f.cols} map")
    n = f.rows
    aug = [list(f.row(i)) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    red, piv = rref(aug, n)
    if piv != list(range(n)):
        raise ZeroDivisionError("map is singular")
    return LinMap(n, n, [r[n:] for r in red])


def is_invertible(f: LinMap) -> bool:
    return f.rows == f.cols and rank(f) == f.rows


# -- quotients ------------------------------------------------------------

@dataclass(frozen=True)
class QuotientPresentation:
    """``ambient / span(relations)`` with projection ``q`` and section ``s``.

    The quotient basis is the set of non-pivot coordinates of the reduced
    relation matrix, in ascending order; ``s`` embeds them.
    """

    ambient_dim: int
    relations: tuple
    q: LinMap
    s: LinMap
    free: tuple = field(default=())

    @property
    def dim(self) -> int:
        return self.q.rows


def cokernel(ambient_dim: int, relations: Iterable[Sequence]) -> QuotientPresentation:
    rels = tuple(tuple(as_fraction(x) for x in r) for r in relations)
    for r in rels:
        if len(r) != ambient_dim:
            raise ShapeError(f"relation of length {len(r)} in ambient dimension {ambient_dim}")
    reduced, pivots = rref(rels, ambient_dim)
    pivot_set = set(pivots)
    free = tuple(c for c in range(ambient_dim) if c not in pivot_set)
    pos = {c: k for k, c in enumerate(free)}
    entries = {}
    for c in free:
        entries[(pos[c], c)] = ONE
    for row, p in zip(reduced, pivots):
        # e_p is congruent to -(row restricted to the free coordinates)
        for c in free:
            if row[c]:
                entries[(pos[c], p)] = -row[c]
    q = LinMap.from_sparse(len(free), ambient_dim, entries)
    s = LinMap.from_sparse(ambient_dim, len(free), {(c, pos[c]): 1 for c in free})
    return QuotientPresentation(ambient_dim, rels, q, s, free)


def relation_matrix(Q: QuotientPresentation) -> LinMap:
    """Relations as the columns of an ``ambient x len(relations)`` map."""
    if not Q.relations:
        return LinMap(Q.ambient_dim, 0)
    return LinMap.from_columns(Q.ambient_dim, Q.relations)


def induce(f: LinMap, Q: QuotientPresentation) -> LinMap:
    """The unique ``g`` with ``g @ Q.q == f``.

    Raises :class:`WellDefinednessError` if ``f`` does not vanish on some
    relation of ``Q``.
    """
    if f.cols != Q.ambient_dim:
        raise ShapeError(f"map has {f.cols} columns, quotient ambient is {Q.ambient_dim}")
    if Q.relations:
        killed = f @ relation_matrix(Q)
        for j in range(killed.cols):
            col = killed.column(j)
            if any(col):
                raise WellDefinednessError(
                    f"map does not vanish on relation {j}", j, col)
    g = f @ Q.s
    if g @ Q.q != f:
        raise AssertionError("induced map fails g @ q == f")
    return g


def tensor_quotient(Q1: QuotientPresentation, Q2: QuotientPresentation) -> QuotientPresentation:
    """``Q1 (x) Q2`` presented on ``ambient1 (x) ambient2``.

    Relations are ``r (x) e_j`` followed by ``e_i (x) r``, in that order, so
    a relation index can be traced back to its source.
    """
    n1, n2 = Q1.ambient_dim, Q2.ambient_dim
    rels = []
    for r in Q1.relations:
        for j in range(n2):
            v = [ZERO] * (n1 * n2)
            for i, x in enumerate(r):
                if x:
                    v[i * n2 + j] = x
            rels.append(tuple(v))
    for i in range(n1):
        for r in Q2.relations:
            v = [ZERO] * (n1 * n2)
            for j, x in enumerate(r):
                if x:
                    v[i * n2 + j] = x
            rels.append(tuple(v))
    free = tuple(a * n2 + b for a in Q1.free for b in Q2.free)
    return QuotientPresentation(n1 * n2, tuple(rels), kron(Q1.q, Q2.q), kron(Q1.s, Q2.s), free)


def tensor_relation_source(Q1: QuotientPresentation, Q2: QuotientPresentation,
                           index: int) -> tuple[int, int]:
    """Map a relation index of ``tensor_quotient(Q1, Q2)`` to ``(factor, relation)``."""
    first = len(Q1.relations) * Q2.ambient_dim
    if index < first:
        return 0, index // Q2.ambient_dim
    return 1, (index - first) % len(Q2.relations)
