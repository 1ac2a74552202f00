"""Shear cocycles theta(a, b) = f(a) + g(b) for a twisted triangular algebra.

Computes the cocycle space Z1 and the inner shears B1, realizes the shear map
(a, x, b) -> (a, x + theta(a, b), b), and transports cocycles along a
conjugating triple (alpha, beta, u).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from ttba import algebra as alg
from ttba import bimodule as bim
from ttba import exactlin
from ttba.errors import ValidationError
from ttba.exactlin import RatMatrix, Vec
from ttba.triangular import TriAlgebra, Twist


@dataclass(frozen=True, eq=False)
class Shear:
    """f maps A to X, g maps B to X; theta(a, b) = f(a) + g(b)."""

    f: RatMatrix  # dim X x dim A
    g: RatMatrix  # dim X x dim B

    def theta(self, a: Sequence[Fraction], b: Sequence[Fraction]) -> Vec:
        return exactlin.vec_add(self.f.mul_vec(a), self.g.mul_vec(b))

    def __add__(self, other: Shear) -> Shear:
        return Shear(self.f + other.f, self.g + other.g)

    def __neg__(self) -> Shear:
        return Shear(-self.f, -self.g)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Shear):
            return NotImplemented
        return self.f == other.f and self.g == other.g

    def is_zero(self) -> bool:
        return self.f.is_zero() and self.g.is_zero()


def zero_shear(dim_a: int, dim_b: int, dim_x: int) -> Shear:
    return Shear(RatMatrix.zero(dim_x, dim_a), RatMatrix.zero(dim_x, dim_b))


def vectorize(s: Shear) -> Vec:
    """Flatten as (f row-major, then g row-major); fixed contract used by all
    span and rank computations."""
    out = []
    for r in range(s.f.rows):
        out.extend(s.f.row_vec(r))
    for r in range(s.g.rows):
        out.extend(s.g.row_vec(r))
    return tuple(out)


def unvectorize(v: Sequence[Fraction], dim_a: int, dim_b: int, dim_x: int) -> Shear:
    f = RatMatrix(dim_x, dim_a)
    g = RatMatrix(dim_x, dim_b)
    for r in range(dim_x):
        for c in range(dim_a):
            val = Fraction(v[r * dim_a + c])
            if val:
                f._rows[r][c] = val
    off = dim_x * dim_a
    for r in range(dim_x):
        for c in range(dim_b):
            val = Fraction(v[off + r * dim_b + c])
            if val:
                g._rows[r][c] = val
    return Shear(f, g)


def _twisted_action_matrices(a: alg.FDAlgebra, b: alg.FDAlgebra, x: bim.Bimodule,
                             twist: Twist) -> tuple[list[RatMatrix], list[RatMatrix]]:
    """Left action of sigma_A(e_i) and right action of sigma_B(e_j) on X."""
    lmats = [x.left_matrix(twist.sigma_a.apply(a.basis_vector(i)))
             for i in range(a.dim)]
    rmats = [x.right_matrix(twist.sigma_b.apply(b.basis_vector(j)))
             for j in range(b.dim)]
    return lmats, rmats


def cocycle_space(a: alg.FDAlgebra, b: alg.FDAlgebra, x: bim.Bimodule,
                  twist: Twist) -> list[Shear]:
    """Basis of the space of shears satisfying the twisted cocycle identity
    theta(aa', bb') = sigma_A(a).theta(a', b') + theta(a, b).sigma_B(b') for
    all arguments.

    Because theta is jointly linear, the identity for all arguments is
    equivalent to its instances where either argument pair is set to zero,
    which split it into three bilinear conditions solved on basis pairs:

        f(a a')  = sigma_A(a).f(a')
        g(b b')  = g(b).sigma_B(b')
        sigma_A(a).g(b') + f(a).sigma_B(b') = 0

    (Solving only the all-basis-vector instances would be too weak: the mixed
    identity is not jointly multilinear, and its spurious solutions would not
    give multiplicative shear maps.)
    """
    na, nb, nx = a.dim, b.dim, x.dim
    nf = nx * na
    nvars = nx * (na + nb)
    lmats, rmats = _twisted_action_matrices(a, b, x, twist)

    rows: list[dict[int, Fraction]] = []

    def f_var(xc: int, i: int) -> int:
        return xc * na + i

    def g_var(xc: int, j: int) -> int:
        return nf + xc * nb + j

    # f(e_i e_i') = sigma_A(e_i) . f(e_i')
    for i, i2 in product(range(na), repeat=2):
        comps = a.prod_basis(i, i2)
        lmat = lmats[i]
        for xc in range(nx):
            row: dict[int, Fraction] = {}
            for k, v in comps.items():
                row[f_var(xc, k)] = row.get(f_var(xc, k), Fraction(0)) + v
            for y, v in lmat._rows[xc].items():
                key = f_var(y, i2)
                w = row.get(key, Fraction(0)) - v
                if w:
                    row[key] = w
                else:
                    row.pop(key, None)
            if row:
                rows.append(row)
    # g(e_j e_j') = g(e_j) . sigma_B(e_j')
    for j, j2 in product(range(nb), repeat=2):
        comps = b.prod_basis(j, j2)
        rmat = rmats[j2]
        for xc in range(nx):
            row = {}
            for k, v in comps.items():
                row[g_var(xc, k)] = row.get(g_var(xc, k), Fraction(0)) + v
            for y, v in rmat._rows[xc].items():
                key = g_var(y, j)
                w = row.get(key, Fraction(0)) - v
                if w:
                    row[key] = w
                else:
                    row.pop(key, None)
            if row:
                rows.append(row)
    # sigma_A(e_i) . g(e_j') + f(e_i) . sigma_B(e_j') = 0
    for i, j2 in product(range(na), range(nb)):
        lmat, rmat = lmats[i], rmats[j2]
        for xc in range(nx):
            row = {}
            for y, v in lmat._rows[xc].items():
                row[g_var(y, j2)] = row.get(g_var(y, j2), Fraction(0)) + v
            for y, v in rmat._rows[xc].items():
                key = f_var(y, i)
                w = row.get(key, Fraction(0)) + v
                if w:
                    row[key] = w
                else:
                    row.pop(key, None)
            if row:
                rows.append(row)

    system = RatMatrix.from_row_dicts(rows, nvars)
    return [unvectorize(v, na, nb, nx) for v in exactlin.kernel_basis(system)]


def inner_shear_of(eta: Sequence[Fraction], a: alg.FDAlgebra, b: alg.FDAlgebra,
                   x: bim.Bimodule, twist: Twist) -> Shear:
    """theta_eta(a, b) = sigma_A(a).eta - eta.sigma_B(b)."""
    f_cols = [x.left_act(twist.sigma_a.apply(a.basis_vector(i)), eta)
              for i in range(a.dim)]
    g_cols = [exactlin.vec_scale(Fraction(-1),
                                 x.right_act(eta, twist.sigma_b.apply(b.basis_vector(j))))
              for j in range(b.dim)]
    return Shear(RatMatrix.from_columns(f_cols, x.dim),
                 RatMatrix.from_columns(g_cols, x.dim))


def inner_shears(a: alg.FDAlgebra, b: alg.FDAlgebra, x: bim.Bimodule,
                 twist: Twist) -> list[Shear]:
    """Basis of the image of eta -> theta_eta, in reduced echelon form of the
    vectorized shear coordinates."""
    nvars = x.dim * (a.dim + b.dim)
    gens = [vectorize(inner_shear_of(x.basis_vector(p), a, b, x, twist))
            for p in range(x.dim)]
    m = exactlin.matrix_from_vectors(gens, nvars)
    _, frows = m.rref()
    basis = []
    for row in frows:
        v = [Fraction(0)] * nvars
        for c, val in row.items():
            v[c] = val
        basis.append(unvectorize(v, a.dim, b.dim, x.dim))
    return basis


def shear_quotient_dim(a: alg.FDAlgebra, b: alg.FDAlgebra, x: bim.Bimodule,
                       twist: Twist) -> int:
    """dim Z1 - dim B1."""
    return len(cocycle_space(a, b, x, twist)) - len(inner_shears(a, b, x, twist))


def shear_in_span(shears: Sequence[Shear], candidate: Shear, dim_a: int,
                  dim_b: int, dim_x: int) -> bool:
    nvars = dim_x * (dim_a + dim_b)
    return exactlin.in_span([vectorize(s) for s in shears],
                            vectorize(candidate), nvars)


def lambda_map(t: TriAlgebra, theta: Shear) -> tuple[RatMatrix, bool]:
    """The shear endomorphism (a, x, b) -> (a, x + theta(a, b), b) of the
    carrier, and whether it is multiplicative on all basis pairs.

    Always invertible: the inverse is the shear map of -theta.
    """
    car = t.carrier
    if theta.f.rows != t.x.dim or theta.f.cols != t.a.dim \
            or theta.g.rows != t.x.dim or theta.g.cols != t.b.dim:
        raise ValueError("shear shape does not match the algebra blocks")
    m = RatMatrix.identity(car.dim)
    off = t.a.dim
    for r in range(t.x.dim):
        for c, v in theta.f._rows[r].items():
            m._rows[off + r][c] = v
        for c, v in theta.g._rows[r].items():
            m._rows[off + r][off + t.x.dim + c] = v
    multiplicative = True
    for s, u in product(range(car.dim), repeat=2):
        lhs = m.mul_vec(car.multiply(car.basis_vector(s), car.basis_vector(u)))
        rhs = car.multiply(m.column_vec(s), m.column_vec(u))
        if lhs != rhs:
            multiplicative = False
            break
    return m, multiplicative


def transport(theta: Shear, alpha: alg.Automorphism, beta: alg.Automorphism,
              u: RatMatrix) -> Shear:
    """Rewrite a cocycle in transported coordinates:
    theta'(a, b) = u^-1(theta(alpha(a), beta(b))).

    When (alpha, beta) conjugate one twist into another and u is equivariant
    for them, this carries cocycles for the target twist to cocycles for the
    source twist, bijectively.
    """
    u_inv = exactlin.inverse(u)
    if u_inv is None:
        raise ValidationError("transport: u is singular")
    return Shear(u_inv @ theta.f @ alpha.matrix, u_inv @ theta.g @ beta.matrix)
