"""Exact rational scalars, sparse matrices, and deterministic rank/kernel/solve.

Scalars are ``fractions.Fraction`` (always lowest terms, positive denominator).
Matrices are sparse, immutable by convention, and all eliminations go through
the fraction-free integer kernel in ``ttba._backend``, so results are
bit-identical across runs.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator, Sequence

from ttba._backend import echelon
from ttba.errors import SchemaError

Rational = Fraction
Vec = tuple[Fraction, ...]

_RAT_RE = re.compile(r"^-?\d+(?:/[1-9]\d*)?$")


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" (or "p"); minus sign allowed on p only, q must be positive."""
    if not isinstance(text, str) or not _RAT_RE.match(text):
        raise SchemaError(f"malformed rational {text!r}")
    return Fraction(text)


def format_rational(value: Fraction) -> str:
    """Inverse of :func:`parse_rational`; "p/q" with q omitted when it is 1."""
    return str(value)


def zero_vec(n: int) -> Vec:
    return (Fraction(0),) * n


def unit_vec(n: int, i: int) -> Vec:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def vec_add(x: Sequence[Fraction], y: Sequence[Fraction]) -> Vec:
    return tuple(a + b for a, b in zip(x, y, strict=True))


def vec_sub(x: Sequence[Fraction], y: Sequence[Fraction]) -> Vec:
    return tuple(a - b for a, b in zip(x, y, strict=True))


def vec_scale(c: Fraction, x: Sequence[Fraction]) -> Vec:
    return tuple(c * a for a in x)


def vec_is_zero(x: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in x)


class RatMatrix:
    """Sparse rational matrix; no zero entries are stored.

    Instances are treated as immutable: construct once, then only query.
    """

    __slots__ = ("rows", "cols", "_rows", "_echelon")

    def __init__(self, rows: int, cols: int,
                 entries: dict[tuple[int, int], Fraction] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        self.rows = rows
        self.cols = cols
        self._rows: list[dict[int, Fraction]] = [dict() for _ in range(rows)]
        self._echelon: tuple[list[int], list[dict[int, int]]] | None = None
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise ValueError(f"index {(r, c)} out of range")
                v = Fraction(v)
                if v:
                    self._rows[r][c] = v

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[Fraction | int]]) -> RatMatrix:
        rows = len(data)
        cols = len(data[0]) if rows else 0
        m = cls(rows, cols)
        for r, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for c, v in enumerate(row):
                v = Fraction(v)
                if v:
                    m._rows[r][c] = v
        return m

    @classmethod
    def from_row_dicts(cls, row_dicts: Sequence[dict[int, Fraction]],
                       cols: int) -> RatMatrix:
        m = cls(len(row_dicts), cols)
        for r, d in enumerate(row_dicts):
            for c, v in d.items():
                if v:
                    m._rows[r][c] = Fraction(v)
        return m

    @classmethod
    def identity(cls, n: int) -> RatMatrix:
        m = cls(n, n)
        for i in range(n):
            m._rows[i][i] = Fraction(1)
        return m

    @classmethod
    def zero(cls, rows: int, cols: int) -> RatMatrix:
        return cls(rows, cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Fraction]], rows: int) -> RatMatrix:
        m = cls(rows, len(columns))
        for c, col in enumerate(columns):
            for r, v in enumerate(col):
                if v:
                    m._rows[r][c] = Fraction(v)
        return m

    # -- queries -----------------------------------------------------------

    def entry(self, r: int, c: int) -> Fraction:
        return self._rows[r].get(c, Fraction(0))

    def entries(self) -> Iterator[tuple[int, int, Fraction]]:
        """Yield (row, col, value) sorted by (row, col)."""
        for r, d in enumerate(self._rows):
            for c in sorted(d):
                yield r, c, d[c]

    def row_vec(self, r: int) -> Vec:
        d = self._rows[r]
        return tuple(d.get(c, Fraction(0)) for c in range(self.cols))

    def column_vec(self, c: int) -> Vec:
        return tuple(self._rows[r].get(c, Fraction(0)) for r in range(self.rows))

    def to_dense(self) -> list[list[Fraction]]:
        return [list(self.row_vec(r)) for r in range(self.rows)]

    def nnz(self) -> int:
        return sum(len(d) for d in self._rows)

    def is_zero(self) -> bool:
        return all(not d for d in self._rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return (self.rows == other.rows and self.cols == other.cols
                and self._rows == other._rows)

    def __hash__(self):
        raise TypeError("RatMatrix is not hashable")

    def __repr__(self) -> str:
        return f"RatMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"

    # -- arithmetic ---------------------------------------------------------

    def transpose(self) -> RatMatrix:
        m = RatMatrix(self.cols, self.rows)
        for r, d in enumerate(self._rows):
            for c, v in d.items():
                m._rows[c][r] = v
        return m

    def __add__(self, other: RatMatrix) -> RatMatrix:
        self._shape_check(other)
        m = RatMatrix(self.rows, self.cols)
        for r in range(self.rows):
            d = dict(self._rows[r])
            for c, v in other._rows[r].items():
                w = d.get(c, Fraction(0)) + v
                if w:
                    d[c] = w
                else:
                    d.pop(c, None)
            m._rows[r] = d
        return m

    def __sub__(self, other: RatMatrix) -> RatMatrix:
        return self + other.scale(Fraction(-1))

    def __neg__(self) -> RatMatrix:
        return self.scale(Fraction(-1))

    def scale(self, c: Fraction) -> RatMatrix:
        m = RatMatrix(self.rows, self.cols)
        if c:
            for r, d in enumerate(self._rows):
                m._rows[r] = {k: c * v for k, v in d.items()}
        return m

    def __matmul__(self, other: RatMatrix) -> RatMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ "
                             f"{other.rows}x{other.cols}")
        m = RatMatrix(self.rows, other.cols)
        for r, d in enumerate(self._rows):
            acc: dict[int, Fraction] = {}
            for k, v in d.items():
                for c, w in other._rows[k].items():
                    s = acc.get(c, Fraction(0)) + v * w
                    if s:
                        acc[c] = s
                    else:
                        acc.pop(c, None)
            m._rows[r] = acc
        return m

    def mul_vec(self, x: Sequence[Fraction]) -> Vec:
        if len(x) != self.cols:
            raise ValueError("vector length mismatch")
        out = []
        for d in self._rows:
            s = Fraction(0)
            for c, v in d.items():
                if x[c]:
                    s += v * x[c]
            out.append(s)
        return tuple(out)

    def _shape_check(self, other: RatMatrix) -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    # -- elimination ---------------------------------------------------------

    def _int_rows(self) -> list[dict[int, int]]:
        out = []
        for d in self._rows:
            if not d:
                out.append({})
                continue
            scale = lcm(*(v.denominator for v in d.values()))
            out.append({c: int(v * scale) for c, v in d.items()})
        return out

    def _echelon_data(self) -> tuple[list[int], list[dict[int, int]]]:
        if self._echelon is None:
            self._echelon = echelon(self._int_rows(), self.cols)
        return self._echelon

    def rank(self) -> int:
        return len(self._echelon_data()[0])

    def rref(self) -> tuple[list[int], list[dict[int, Fraction]]]:
        """Reduced row echelon form of the row space.

        Returns (pivot columns, rows as sparse Fraction dicts); each row has a
        leading 1 at its pivot column and zeros above and below it.
        """
        pivot_cols, int_rows = self._echelon_data()
        frows: list[dict[int, Fraction]] = []
        for pc, row in zip(pivot_cols, int_rows):
            lead = row[pc]
            frows.append({c: Fraction(v, lead) for c, v in row.items()})
        # eliminate upwards, right to left
        for k in range(len(pivot_cols) - 1, -1, -1):
            pc = pivot_cols[k]
            for j in range(k):
                fac = frows[j].get(pc)
                if fac is None:
                    continue
                target = frows[j]
                for c, v in frows[k].items():
                    w = target.get(c, Fraction(0)) - fac * v
                    if w:
                        target[c] = w
                    else:
                        target.pop(c, None)
        return pivot_cols, frows


def rank(m: RatMatrix) -> int:
    """Rank over the rationals, by fraction-free elimination."""
    return m.rank()


def kernel_basis(m: RatMatrix) -> list[Vec]:
    """Basis of the right kernel {v : Mv = 0}.

    One vector per free column, in ascending column order, normalized so the
    free coordinate is 1 and all other free coordinates are 0.
    """
    pivot_cols, frows = m.rref()
    pivot_set = set(pivot_cols)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * m.cols
        v[free] = Fraction(1)
        for k, pc in enumerate(pivot_cols):
            coeff = frows[k].get(free)
            if coeff:
                v[pc] = -coeff
        basis.append(tuple(v))
    return basis


def solve(m: RatMatrix, b: Sequence[Fraction]) -> Vec | None:
    """One solution of Mx = b, or None when inconsistent.

    The particular solution is canonical: free variables are 0 and pivot
    variables come from the reduced echelon form of the augmented system.
    """
    if len(b) != m.rows:
        raise ValueError("right-hand side length mismatch")
    aug = RatMatrix(m.rows, m.cols + 1)
    for r in range(m.rows):
        aug._rows[r] = dict(m._rows[r])
        if b[r]:
            aug._rows[r][m.cols] = Fraction(b[r])
    pivot_cols, frows = aug.rref()
    if m.cols in pivot_cols:
        return None
    x = [Fraction(0)] * m.cols
    for k, pc in enumerate(pivot_cols):
        x[pc] = frows[k].get(m.cols, Fraction(0))
    return tuple(x)


def inverse(m: RatMatrix) -> RatMatrix | None:
    """Inverse of a square matrix, or None when singular."""
    if m.rows != m.cols:
        return None
    n = m.rows
    aug = RatMatrix(n, 2 * n)
    for r in range(n):
        aug._rows[r] = dict(m._rows[r])
        aug._rows[r][n + r] = Fraction(1)
    pivot_cols, frows = aug.rref()
    if pivot_cols != list(range(n)):
        return None
    inv = RatMatrix(n, n)
    for k in range(n):
        inv._rows[k] = {c - n: v for c, v in frows[k].items() if c >= n}
    return inv


def vstack(mats: Iterable[RatMatrix]) -> RatMatrix:
    mats = list(mats)
    if not mats:
        raise ValueError("vstack of nothing")
    cols = mats[0].cols
    out_rows: list[dict[int, Fraction]] = []
    for m in mats:
        if m.cols != cols:
            raise ValueError("column count mismatch")
        out_rows.extend(dict(d) for d in m._rows)
    result = RatMatrix(len(out_rows), cols)
    result._rows = out_rows
    return result


def matrix_from_vectors(vectors: Sequence[Sequence[Fraction]], cols: int) -> RatMatrix:
    """Stack coordinate vectors as matrix rows (used for span/rank tests)."""
    m = RatMatrix(len(vectors), cols)
    for r, vec in enumerate(vectors):
        for c, v in enumerate(vec):
            if v:
                m._rows[r][c] = Fraction(v)
    return m


def span_dim(vectors: Sequence[Sequence[Fraction]], cols: int) -> int:
    return matrix_from_vectors(vectors, cols).rank()


def in_span(vectors: Sequence[Sequence[Fraction]], candidate: Sequence[Fraction],
            cols: int) -> bool:
    base = span_dim(vectors, cols)
    return span_dim(list(vectors) + [tuple(candidate)], cols) == base
