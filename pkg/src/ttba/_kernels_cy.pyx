# cython: language_level=3
# cython: boundscheck=False
"""Compiled twin of ``ttba._kernels``.

Same contract, same deterministic pivot rule; entries stay Python ints so
arbitrary precision is preserved.  Cython removes the interpreter overhead of
the inner merge loops, which dominates on the large differentials produced by
the cohomology module.
"""

from math import gcd


def normalize_row(dict row):
    cdef object g = 0
    cdef object v
    if not row:
        return row
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if row[min(row)] < 0:
        g = -g
    if g != 0 and g != 1:
        for c in row:
            row[c] //= g
    return row


def echelon(list rows, Py_ssize_t ncols):
    cdef list active = [normalize_row(dict(r)) for r in rows if r]
    cdef list pivot_cols = []
    cdef list pivot_rows = []
    cdef Py_ssize_t col, idx, n
    cdef dict piv_row, row, new
    cdef object piv, fac, v, w
    cdef list remaining
    for col in range(ncols):
        if not active:
            break
        piv_row = None
        n = len(active)
        for idx in range(n):
            if col in <dict>active[idx]:
                piv_row = <dict>active.pop(idx)
                break
        if piv_row is None:
            continue
        piv = piv_row[col]
        remaining = []
        for row in active:
            fac = row.pop(col, None)
            if fac is None:
                remaining.append(row)
                continue
            new = {}
            for c, v in row.items():
                new[c] = piv * v
            for c, v in piv_row.items():
                if c == col:
                    continue
                w = new.get(c, 0) - fac * v
                if w:
                    new[c] = w
                else:
                    new.pop(c, None)
            if new:
                remaining.append(normalize_row(new))
        active = remaining
        pivot_cols.append(col)
        pivot_rows.append(piv_row)
    return pivot_cols, pivot_rows
