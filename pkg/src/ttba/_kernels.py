"""Fraction-free sparse row elimination over the integers.

This is the hot kernel behind every rank, kernel and solve in the package.
Rows are dicts mapping column index to a nonzero Python int (arbitrary
precision).  ``ttba._kernels_cy`` is a compiled twin with the identical
contract; parity between the two is enforced by tests, and the active one is
chosen in ``ttba._backend``.
"""

from __future__ import annotations

from math import gcd


def normalize_row(row: dict[int, int]) -> dict[int, int]:
    """Divide ``row`` by the gcd of its entries and make the leading entry
    (smallest column index) positive.  Mutates and returns ``row``."""
    if not row:
        return row
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if row[min(row)] < 0:
        g = -g
    if g not in (0, 1):
        for c in row:
            row[c] //= g
    return row


def echelon(rows: list[dict[int, int]], ncols: int) -> tuple[list[int], list[dict[int, int]]]:
    """Bring integer sparse rows to row echelon form without fractions.

    Columns are scanned left to right; the pivot for a column is the first
    surviving row, in input order, with a nonzero entry there.  Rows below are
    combined by the cross-multiplication rule ``r := piv*r - r[col]*pivot_row``
    and then gcd-normalized, so every intermediate value is an integer and the
    result is deterministic for a fixed input.

    Returns ``(pivot_cols, pivot_rows)``, aligned and ordered by column.  Each
    pivot row has its leading entry at its pivot column.  Input row dicts are
    not modified (they are copied on entry).
    """
    active = [normalize_row(dict(r)) for r in rows if r]
    pivot_cols: list[int] = []
    pivot_rows: list[dict[int, int]] = []
    for col in range(ncols):
        if not active:
            break
        piv_row = None
        for idx in range(len(active)):
            if col in active[idx]:
                piv_row = active.pop(idx)
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
            new = {c: piv * v for c, v in row.items()}
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
