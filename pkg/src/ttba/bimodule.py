"""Bimodules over pairs of algebras as sparse action tensors.

Includes the dual and twisted-dual constructions and the semisimple test
bimodule A^e/rad(A^e) used by the projective-dimension criterion.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Sequence

from ttba import algebra as alg
from ttba.errors import ValidationError
from ttba.exactlin import RatMatrix, Vec, unit_vec

ActionTensor = dict[tuple[int, int], dict[int, Fraction]]


class Bimodule:
    """Left/right action tensors over a pair of algebras.

    ``left[(i, p)][q]`` is the coefficient of x_q in e_i . x_p and
    ``right[(p, j)][q]`` the coefficient of x_q in x_p . e_j.
    """

    __slots__ = ("left_algebra", "right_algebra", "dim", "left", "right")

    def __init__(self, left_algebra: alg.FDAlgebra, right_algebra: alg.FDAlgebra,
                 dim: int, left: ActionTensor, right: ActionTensor):
        self.left_algebra = left_algebra
        self.right_algebra = right_algebra
        self.dim = dim
        self.left: ActionTensor = {}
        for (i, p), comps in left.items():
            if not (0 <= i < left_algebra.dim and 0 <= p < dim):
                raise ValueError(f"left action index {(i, p)} out of range")
            clean = {q: Fraction(v) for q, v in comps.items() if v}
            if clean:
                self.left[(i, p)] = clean
        self.right: ActionTensor = {}
        for (p, j), comps in right.items():
            if not (0 <= p < dim and 0 <= j < right_algebra.dim):
                raise ValueError(f"right action index {(p, j)} out of range")
            clean = {q: Fraction(v) for q, v in comps.items() if v}
            if clean:
                self.right[(p, j)] = clean

    def basis_vector(self, p: int) -> Vec:
        return unit_vec(self.dim, p)

    def left_act(self, a: Sequence[Fraction], x: Sequence[Fraction]) -> Vec:
        out = [Fraction(0)] * self.dim
        for i, ai in enumerate(a):
            if not ai:
                continue
            for p, xp in enumerate(x):
                if not xp:
                    continue
                c = ai * xp
                for q, v in self.left.get((i, p), {}).items():
                    out[q] += c * v
        return tuple(out)

    def right_act(self, x: Sequence[Fraction], b: Sequence[Fraction]) -> Vec:
        out = [Fraction(0)] * self.dim
        for p, xp in enumerate(x):
            if not xp:
                continue
            for j, bj in enumerate(b):
                if not bj:
                    continue
                c = xp * bj
                for q, v in self.right.get((p, j), {}).items():
                    out[q] += c * v
        return tuple(out)

    def act(self, a: Sequence[Fraction], x: Sequence[Fraction],
            b: Sequence[Fraction]) -> Vec:
        """a . x . b, evaluated left action first."""
        return self.right_act(self.left_act(a, x), b)

    def left_matrix(self, a: Sequence[Fraction]) -> RatMatrix:
        cols = [self.left_act(a, self.basis_vector(p)) for p in range(self.dim)]
        return RatMatrix.from_columns(cols, self.dim)

    def right_matrix(self, b: Sequence[Fraction]) -> RatMatrix:
        cols = [self.right_act(self.basis_vector(p), b) for p in range(self.dim)]
        return RatMatrix.from_columns(cols, self.dim)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Bimodule):
            return NotImplemented
        return (self.dim == other.dim and self.left == other.left
                and self.right == other.right
                and self.left_algebra == other.left_algebra
                and self.right_algebra == other.right_algebra)

    def __hash__(self):
        raise TypeError("Bimodule is not hashable")

    def __repr__(self) -> str:
        return f"Bimodule(dim={self.dim})"


def check_bimodule(x: Bimodule) -> list[str]:
    """Validation report; empty iff the unital bimodule axioms hold on basis
    triples."""
    a, b = x.left_algebra, x.right_algebra
    report = []
    for i, j, p in product(range(a.dim), range(a.dim), range(x.dim)):
        prod_ij = a.multiply(a.basis_vector(i), a.basis_vector(j))
        lhs = x.left_act(prod_ij, x.basis_vector(p))
        rhs = x.left_act(a.basis_vector(i), x.left_act(a.basis_vector(j), x.basis_vector(p)))
        if lhs != rhs:
            report.append(f"left associativity fails at (a_{i}, a_{j}, x_{p})")
    for p, i, j in product(range(x.dim), range(b.dim), range(b.dim)):
        prod_ij = b.multiply(b.basis_vector(i), b.basis_vector(j))
        lhs = x.right_act(x.basis_vector(p), prod_ij)
        rhs = x.right_act(x.right_act(x.basis_vector(p), b.basis_vector(i)), b.basis_vector(j))
        if lhs != rhs:
            report.append(f"right associativity fails at (x_{p}, b_{i}, b_{j})")
    for i, p, j in product(range(a.dim), range(x.dim), range(b.dim)):
        lhs = x.right_act(x.left_act(a.basis_vector(i), x.basis_vector(p)), b.basis_vector(j))
        rhs = x.left_act(a.basis_vector(i), x.right_act(x.basis_vector(p), b.basis_vector(j)))
        if lhs != rhs:
            report.append(f"left/right compatibility fails at (a_{i}, x_{p}, b_{j})")
    for p in range(x.dim):
        if x.left_act(a.unit, x.basis_vector(p)) != x.basis_vector(p):
            report.append(f"left unit fails at x_{p}")
        if x.right_act(x.basis_vector(p), b.unit) != x.basis_vector(p):
            report.append(f"right unit fails at x_{p}")
    return report


def require_valid_bimodule(x: Bimodule, name: str = "bimodule") -> None:
    report = check_bimodule(x)
    if report:
        raise ValidationError(f"{name}: {report[0]}",
                              [f"{name}: {line}" for line in report])


def zero_bimodule(a: alg.FDAlgebra, b: alg.FDAlgebra) -> Bimodule:
    return Bimodule(a, b, 0, {}, {})


def regular_bimodule(a: alg.FDAlgebra) -> Bimodule:
    """A as a bimodule over itself by multiplication."""
    left: ActionTensor = {}
    right: ActionTensor = {}
    for (i, j), comps in a.structure.items():
        left[(i, j)] = dict(comps)
        right[(i, j)] = dict(comps)
    return Bimodule(a, a, a.dim, left, right)


def dual_bimodule(m: Bimodule) -> Bimodule:
    """Dual of a bimodule over a single algebra T, in the dual basis.

    Actions follow the dual convention (t.phi)(x) = phi(x.t) and
    (phi.t)(x) = phi(t.x).
    """
    if m.left_algebra != m.right_algebra:
        raise ValidationError("dual_bimodule requires a bimodule over one algebra")
    t = m.left_algebra
    left: ActionTensor = {}
    for (q, i), comps in m.right.items():
        for p, v in comps.items():
            left.setdefault((i, p), {})[q] = v
    right: ActionTensor = {}
    for (j, q), comps in m.left.items():
        for p, v in comps.items():
            right.setdefault((p, j), {})[q] = v
    return Bimodule(t, t, m.dim, left, right)


def twisted_dual(x: Bimodule, sigma_a: alg.Automorphism,
                 sigma_b: alg.Automorphism) -> Bimodule:
    """Dual of an A-B bimodule with the actions routed through a twist.

    The result is a B-A bimodule on the dual basis:
    (b . phi . a)(x) = phi(sigma_a(a) . x . sigma_b(b)).  For bimodules over a
    single algebra and identity twists this coincides with
    :func:`dual_bimodule` tensor-for-tensor.
    """
    a_alg, b_alg = x.left_algebra, x.right_algebra
    left: ActionTensor = {}
    for j in range(b_alg.dim):
        # (e_j . phi^p)(x_q) = phi^p(x_q . sigma_b(e_j)), so the (p, q) dual
        # entry is the (p, q) entry of the right-action matrix
        mat = x.right_matrix(sigma_b.apply(b_alg.basis_vector(j)))
        for p, row in enumerate(mat._rows):
            for q, v in row.items():
                left.setdefault((j, p), {})[q] = v
    right: ActionTensor = {}
    for i in range(a_alg.dim):
        # (phi^p . e_i)(x_q) = phi^p(sigma_a(e_i) . x_q)
        mat = x.left_matrix(sigma_a.apply(a_alg.basis_vector(i)))
        for p, row in enumerate(mat._rows):
            for q, v in row.items():
                right.setdefault((p, i), {})[q] = v
    return Bimodule(b_alg, a_alg, x.dim, left, right)


def semisimple_test_bimodule(a: alg.FDAlgebra) -> Bimodule:
    """A^e/rad(A^e) as an A-bimodule: a.(z+rad).b = (a (x) b-op) z + rad."""
    ae = alg.enveloping(a)
    rad = alg.radical(ae)
    _, proj, lift = alg.quotient_algebra(ae, rad)
    qdim = proj.rows

    def embed_left(i: int) -> Vec:
        # e_i (x) 1 in A (x) A^op
        out = [Fraction(0)] * ae.dim
        for m, u in enumerate(a.unit):
            if u:
                out[i * a.dim + m] = u
        return tuple(out)

    def embed_right(j: int) -> Vec:
        # 1 (x) e_j^op
        out = [Fraction(0)] * ae.dim
        for m, u in enumerate(a.unit):
            if u:
                out[m * a.dim + j] = u
        return tuple(out)

    left: ActionTensor = {}
    right: ActionTensor = {}
    for p in range(qdim):
        z = lift.column_vec(p)
        for i in range(a.dim):
            w = proj.mul_vec(ae.multiply(embed_left(i), z))
            comps = {q: v for q, v in enumerate(w) if v}
            if comps:
                left[(i, p)] = comps
        for j in range(a.dim):
            w = proj.mul_vec(ae.multiply(embed_right(j), z))
            comps = {q: v for q, v in enumerate(w) if v}
            if comps:
                right[(p, j)] = comps
    return Bimodule(a, a, qdim, left, right)


def x_as_q_bimodule(a: alg.FDAlgebra, b: alg.FDAlgebra, x: Bimodule,
                    q_algebra: alg.FDAlgebra) -> Bimodule:
    """An A-B bimodule viewed over Q = A (+) B: (a,b).x.(a',b') = a.x.b'."""
    left: ActionTensor = {(i, p): dict(c) for (i, p), c in x.left.items()}
    right: ActionTensor = {}
    for (p, j), comps in x.right.items():
        right[(p, a.dim + j)] = dict(comps)
    return Bimodule(q_algebra, q_algebra, x.dim, left, right)


def permute_bimodule(x: Bimodule, left_algebra: alg.FDAlgebra,
                     right_algebra: alg.FDAlgebra, perm_left: Sequence[int],
                     perm_right: Sequence[int], perm_mod: Sequence[int]) -> Bimodule:
    """Relabel the bases of both algebras and the module consistently.

    ``left_algebra``/``right_algebra`` are the already-permuted algebras; the
    permutations use the same convention as :func:`ttba.algebra.permute_algebra`.
    """
    inv_mod = [0] * x.dim
    for new, old in enumerate(perm_mod):
        inv_mod[old] = new
    inv_l = [0] * len(perm_left)
    for new, old in enumerate(perm_left):
        inv_l[old] = new
    inv_r = [0] * len(perm_right)
    for new, old in enumerate(perm_right):
        inv_r[old] = new
    left: ActionTensor = {}
    for (i, p), comps in x.left.items():
        left[(inv_l[i], inv_mod[p])] = {inv_mod[q]: v for q, v in comps.items()}
    right: ActionTensor = {}
    for (p, j), comps in x.right.items():
        right[(inv_mod[p], inv_r[j])] = {inv_mod[q]: v for q, v in comps.items()}
    return Bimodule(left_algebra, right_algebra, x.dim, left, right)
