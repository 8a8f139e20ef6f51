"""Pure-Python enumeration kernels; same API as the compiled ``_kernels``."""

import itertools


def is_associative(table, n):
    t = table
    for a in range(n):
        row = a * n
        for b in range(n):
            ab = t[row + b] * n
            bn = b * n
            for c in range(n):
                if t[ab + c] != t[row + t[bn + c]]:
                    return False
    return True


def associative_tables(n, unit):
    """Flat ``n*n`` tables with ``unit`` as two-sided identity that are associative.

    Free entries (row and column of ``unit`` removed) are enumerated as a
    base-``n`` counter, last free cell fastest.
    """
    if n <= 0:
        return []
    base = [0] * (n * n)
    cells = []
    for a in range(n):
        for b in range(n):
            if a == unit:
                base[a * n + b] = b
            elif b == unit:
                base[a * n + b] = a
            else:
                cells.append(a * n + b)
    out = []
    for values in itertools.product(range(n), repeat=len(cells)):
        t = base[:]
        for k, v in zip(cells, values):
            t[k] = v
        if is_associative(t, n):
            out.append(tuple(t))
    return out
