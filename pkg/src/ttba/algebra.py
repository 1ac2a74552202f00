"""Finite-dimensional unital associative algebras given by structure constants.

Products, validation, radicals (characteristic-zero trace criterion), standard
constructions (direct sum, opposite, tensor, enveloping, quotient), and
verified automorphisms stored with explicit inverses.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from ttba import exactlin
from ttba.errors import ValidationError
from ttba.exactlin import RatMatrix, Vec, unit_vec, zero_vec

StructTensor = dict[tuple[int, int], dict[int, Fraction]]


class FDAlgebra:
    """Unital associative algebra over the rationals.

    ``structure[(i, j)][k]`` is the coefficient of e_k in e_i * e_j; zero
    coefficients are never stored.  Validation is explicit via
    :func:`check_algebra`, not implied by construction.
    """

    __slots__ = ("dim", "basis_labels", "structure", "unit")

    def __init__(self, dim: int, basis_labels: Sequence[str],
                 structure: StructTensor, unit: Sequence[Fraction]):
        if len(basis_labels) != dim or len(unit) != dim:
            raise ValueError("label/unit length must equal dim")
        self.dim = dim
        self.basis_labels = list(basis_labels)
        self.structure: StructTensor = {}
        for (i, j), comps in structure.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError(f"structure index {(i, j)} out of range")
            clean = {k: Fraction(v) for k, v in comps.items() if v}
            for k in clean:
                if not 0 <= k < dim:
                    raise ValueError(f"structure target {k} out of range")
            if clean:
                self.structure[(i, j)] = clean
        self.unit: Vec = tuple(Fraction(v) for v in unit)

    def prod_basis(self, i: int, j: int) -> dict[int, Fraction]:
        return self.structure.get((i, j), {})

    def basis_vector(self, i: int) -> Vec:
        return unit_vec(self.dim, i)

    def multiply(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vec:
        """Bilinear product of coordinate vectors."""
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError("coordinate length mismatch")
        out = [Fraction(0)] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, v in self.prod_basis(i, j).items():
                    out[k] += c * v
        return tuple(out)

    def left_mult_matrix(self, x: Sequence[Fraction]) -> RatMatrix:
        """Matrix of y -> x*y."""
        cols = [self.multiply(x, self.basis_vector(j)) for j in range(self.dim)]
        return RatMatrix.from_columns(cols, self.dim)

    def right_mult_matrix(self, x: Sequence[Fraction]) -> RatMatrix:
        """Matrix of y -> y*x."""
        cols = [self.multiply(self.basis_vector(j), x) for j in range(self.dim)]
        return RatMatrix.from_columns(cols, self.dim)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FDAlgebra):
            return NotImplemented
        return (self.dim == other.dim and self.basis_labels == other.basis_labels
                and self.structure == other.structure and self.unit == other.unit)

    def __hash__(self):
        raise TypeError("FDAlgebra is not hashable")

    def __repr__(self) -> str:
        return f"FDAlgebra(dim={self.dim})"


def check_algebra(a: FDAlgebra) -> list[str]:
    """Validation report; empty iff the algebra axioms hold.

    Lists every associativity failure (i, j, k) and every unit axiom failure.
    """
    report = []
    for i, j, k in product(range(a.dim), repeat=3):
        lhs = a.multiply(a.multiply(a.basis_vector(i), a.basis_vector(j)),
                         a.basis_vector(k))
        rhs = a.multiply(a.basis_vector(i),
                         a.multiply(a.basis_vector(j), a.basis_vector(k)))
        if lhs != rhs:
            report.append(
                f"associativity fails at basis triple ({i}, {j}, {k}): "
                f"({a.basis_labels[i]}*{a.basis_labels[j]})*{a.basis_labels[k]}"
                f" != {a.basis_labels[i]}*({a.basis_labels[j]}*{a.basis_labels[k]})")
    for i in range(a.dim):
        e = a.basis_vector(i)
        if a.multiply(a.unit, e) != e:
            report.append(f"unit fails on the left at basis element {i}")
        if a.multiply(e, a.unit) != e:
            report.append(f"unit fails on the right at basis element {i}")
    return report


def require_valid_algebra(a: FDAlgebra, name: str = "algebra") -> None:
    report = check_algebra(a)
    if report:
        raise ValidationError(f"{name}: {report[0]}",
                              [f"{name}: {line}" for line in report])


def direct_sum(a: FDAlgebra, b: FDAlgebra) -> FDAlgebra:
    """Block-diagonal sum with unit (1_A, 1_B)."""
    structure: StructTensor = {}
    for (i, j), comps in a.structure.items():
        structure[(i, j)] = dict(comps)
    for (i, j), comps in b.structure.items():
        structure[(a.dim + i, a.dim + j)] = {a.dim + k: v for k, v in comps.items()}
    labels = [f"A.{s}" for s in a.basis_labels] + [f"B.{s}" for s in b.basis_labels]
    unit = tuple(a.unit) + tuple(b.unit)
    return FDAlgebra(a.dim + b.dim, labels, structure, unit)


def opposite(a: FDAlgebra) -> FDAlgebra:
    structure: StructTensor = {}
    for (i, j), comps in a.structure.items():
        structure[(j, i)] = dict(comps)
    return FDAlgebra(a.dim, list(a.basis_labels), structure, a.unit)


def tensor(a: FDAlgebra, b: FDAlgebra) -> FDAlgebra:
    """Tensor product; basis e_i (x) f_j at flat index i*dim(B) + j."""
    dim = a.dim * b.dim
    structure: StructTensor = {}
    for (i1, j1), ca in a.structure.items():
        for (i2, j2), cb in b.structure.items():
            comps: dict[int, Fraction] = {}
            for k1, v1 in ca.items():
                for k2, v2 in cb.items():
                    comps[k1 * b.dim + k2] = v1 * v2
            structure[(i1 * b.dim + i2, j1 * b.dim + j2)] = comps
    labels = [f"{s}(x){t}" for s in a.basis_labels for t in b.basis_labels]
    unit = [Fraction(0)] * dim
    for i, u1 in enumerate(a.unit):
        if not u1:
            continue
        for j, u2 in enumerate(b.unit):
            if u2:
                unit[i * b.dim + j] = u1 * u2
    return FDAlgebra(dim, labels, structure, tuple(unit))


def enveloping(a: FDAlgebra) -> FDAlgebra:
    """A (x) A^op; left modules over it are exactly A-bimodules."""
    return tensor(a, opposite(a))


def radical(a: FDAlgebra) -> list[Vec]:
    """Basis of the Jacobson radical via the characteristic-zero trace
    criterion: x is radical iff trace(L_{x*y}) = 0 for every basis y."""
    traces = []
    for k in range(a.dim):
        t = Fraction(0)
        for m in range(a.dim):
            t += a.prod_basis(k, m).get(m, Fraction(0))
        traces.append(t)
    entries: dict[tuple[int, int], Fraction] = {}
    for j in range(a.dim):
        for i in range(a.dim):
            s = Fraction(0)
            for k, v in a.prod_basis(i, j).items():
                if traces[k]:
                    s += v * traces[k]
            if s:
                entries[(j, i)] = s
    return exactlin.kernel_basis(RatMatrix(a.dim, a.dim, entries))


def center_basis(a: FDAlgebra) -> list[Vec]:
    """Basis of {z : e_i z = z e_i for all i}, by a commutant kernel solve."""
    row_dicts: list[dict[int, Fraction]] = []
    for i in range(a.dim):
        diff = a.left_mult_matrix(a.basis_vector(i)) - a.right_mult_matrix(a.basis_vector(i))
        for r in range(a.dim):
            row_dicts.append({c: v for c, v in diff._rows[r].items()})
    m = RatMatrix.from_row_dicts(row_dicts, a.dim)
    return exactlin.kernel_basis(m)


def quotient_algebra(a: FDAlgebra, ideal: Sequence[Vec]) -> tuple[FDAlgebra, RatMatrix, RatMatrix]:
    """Quotient by the span of ``ideal`` (assumed a two-sided ideal).

    Returns (Q, proj, lift) with proj: A -> Q, lift: Q -> A, proj @ lift = id.
    Quotient basis: images of the standard basis vectors at non-pivot
    coordinates of the ideal's reduced echelon form.
    """
    span = exactlin.matrix_from_vectors(ideal, a.dim)
    pivot_cols, frows = span.rref()
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(a.dim) if c not in pivot_set]
    qdim = len(free_cols)

    proj = RatMatrix(qdim, a.dim)
    for qi, c in enumerate(free_cols):
        proj._rows[qi][c] = Fraction(1)
    # reducing modulo the ideal: subtract pivot rows to clear pivot coords,
    # which adds the pivot rows' free-coordinate parts
    for k, pc in enumerate(pivot_cols):
        for qi, c in enumerate(free_cols):
            v = frows[k].get(c)
            if v:
                proj._rows[qi][pc] = -v

    lift = RatMatrix(a.dim, qdim)
    for qi, c in enumerate(free_cols):
        lift._rows[c][qi] = Fraction(1)

    structure: StructTensor = {}
    for i, j in product(range(qdim), repeat=2):
        prod_in_a = a.multiply(lift.column_vec(i), lift.column_vec(j))
        comps = {k: v for k, v in enumerate(proj.mul_vec(prod_in_a)) if v}
        if comps:
            structure[(i, j)] = comps
    labels = [f"[{a.basis_labels[c]}]" for c in free_cols]
    unit = proj.mul_vec(a.unit)
    q = FDAlgebra(qdim, labels, structure, unit)
    return q, proj, lift


@dataclass(frozen=True, eq=False)
class Automorphism:
    """Verified algebra automorphism, stored with its explicit inverse."""

    matrix: RatMatrix
    inverse: RatMatrix

    def apply(self, x: Sequence[Fraction]) -> Vec:
        return self.matrix.mul_vec(x)

    def apply_inverse(self, x: Sequence[Fraction]) -> Vec:
        return self.inverse.mul_vec(x)

    def compose(self, other: Automorphism) -> Automorphism:
        """self after other."""
        return Automorphism(self.matrix @ other.matrix,
                            other.inverse @ self.inverse)

    def inverted(self) -> Automorphism:
        return Automorphism(self.inverse, self.matrix)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Automorphism):
            return NotImplemented
        return self.matrix == other.matrix

    def is_identity(self) -> bool:
        return self.matrix == RatMatrix.identity(self.matrix.rows)


def identity_automorphism(a: FDAlgebra) -> Automorphism:
    eye = RatMatrix.identity(a.dim)
    return Automorphism(eye, eye)


def check_automorphism(a: FDAlgebra, m: RatMatrix) -> Automorphism | None:
    """Accept m iff it is invertible, multiplicative on basis pairs, and
    unit-preserving; returns the Automorphism with computed inverse."""
    if m.rows != a.dim or m.cols != a.dim:
        return None
    inv = exactlin.inverse(m)
    if inv is None:
        return None
    if m.mul_vec(a.unit) != a.unit:
        return None
    for i, j in product(range(a.dim), repeat=2):
        lhs = m.mul_vec(a.multiply(a.basis_vector(i), a.basis_vector(j)))
        rhs = a.multiply(m.column_vec(i), m.column_vec(j))
        if lhs != rhs:
            return None
    return Automorphism(m, inv)


def permute_algebra(a: FDAlgebra, perm: Sequence[int]) -> FDAlgebra:
    """Relabel the basis: new basis element p is old basis element perm[p]."""
    inv = [0] * a.dim
    for new, old in enumerate(perm):
        inv[old] = new
    structure: StructTensor = {}
    for (i, j), comps in a.structure.items():
        structure[(inv[i], inv[j])] = {inv[k]: v for k, v in comps.items()}
    labels = [a.basis_labels[perm[p]] for p in range(a.dim)]
    unit = tuple(a.unit[perm[p]] for p in range(a.dim))
    return FDAlgebra(a.dim, labels, structure, unit)
