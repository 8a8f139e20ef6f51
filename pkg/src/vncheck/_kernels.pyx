# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels (see _kernels_py for the reference version)."""

from libc.stdlib cimport malloc, free


cdef inline bint _assoc(int* t, int n) noexcept nogil:
    cdef int a, b, c, ab
    for a in range(n):
        for b in range(n):
            ab = t[a * n + b]
            for c in range(n):
                if t[ab * n + c] != t[a * n + t[b * n + c]]:
                    return 0
    return 1


def is_associative(table, int n):
    cdef int* t = <int*> malloc(n * n * sizeof(int))
    cdef int k
    try:
        for k in range(n * n):
            t[k] = table[k]
        return bool(_assoc(t, n))
    finally:
        free(t)


def associative_tables(int n, int unit):
    """Flat ``n*n`` tables with ``unit`` as two-sided identity that are associative.

    Free entries (row and column of ``unit`` removed) are enumerated as a
    base-``n`` counter, last free cell fastest.
    """
    if n <= 0:
        return []
    cdef int nn = n * n
    cdef int* t = <int*> malloc(nn * sizeof(int))
    cdef int* cells = <int*> malloc(nn * sizeof(int))
    cdef int nfree = 0, a, b, k
    out = []
    try:
        for a in range(n):
            for b in range(n):
                if a == unit:
                    t[a * n + b] = b
                elif b == unit:
                    t[a * n + b] = a
                else:
                    t[a * n + b] = 0
                    cells[nfree] = a * n + b
                    nfree += 1
        while True:
            if _assoc(t, n):
                out.append(tuple([t[k] for k in range(nn)]))
            k = nfree - 1
            while k >= 0:
                t[cells[k]] += 1
                if t[cells[k]] < n:
                    break
                t[cells[k]] = 0
                k -= 1
            if k < 0:
                break
    finally:
        free(t)
        free(cells)
    return out
