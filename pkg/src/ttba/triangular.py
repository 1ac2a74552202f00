"""Twisted triangular algebras: carrier construction, Peirce idempotents,
square-zero ideal, diagonal quotient, and the block l1 norm.

Elements (a, x, b) multiply by (a, x, b)(a', x', b') =
(aa', sa(a).x' + x.sb(b'), bb') for a twist (sa, sb); the carrier basis is
ordered A-block, X-block, B-block.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ttba import algebra as alg
from ttba import bimodule as bim
from ttba.errors import ValidationError
from ttba.exactlin import RatMatrix, Vec, zero_vec


@dataclass(frozen=True, eq=False)
class Twist:
    sigma_a: alg.Automorphism
    sigma_b: alg.Automorphism

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Twist):
            return NotImplemented
        return self.sigma_a == other.sigma_a and self.sigma_b == other.sigma_b


def identity_twist(a: alg.FDAlgebra, b: alg.FDAlgebra) -> Twist:
    return Twist(alg.identity_automorphism(a), alg.identity_automorphism(b))


class TriAlgebra:
    """The carrier algebra together with its block data."""

    __slots__ = ("a", "b", "x", "twist", "carrier", "a_range", "x_range", "b_range")

    def __init__(self, a: alg.FDAlgebra, b: alg.FDAlgebra, x: bim.Bimodule,
                 twist: Twist, carrier: alg.FDAlgebra):
        self.a = a
        self.b = b
        self.x = x
        self.twist = twist
        self.carrier = carrier
        self.a_range = range(0, a.dim)
        self.x_range = range(a.dim, a.dim + x.dim)
        self.b_range = range(a.dim + x.dim, a.dim + x.dim + b.dim)

    @property
    def dim(self) -> int:
        return self.carrier.dim

    def embed(self, a: Sequence[Fraction] | None = None,
              x: Sequence[Fraction] | None = None,
              b: Sequence[Fraction] | None = None) -> Vec:
        out = [Fraction(0)] * self.dim
        if a is not None:
            for i, v in enumerate(a):
                out[i] = Fraction(v)
        if x is not None:
            for p, v in enumerate(x):
                out[self.a.dim + p] = Fraction(v)
        if b is not None:
            for j, v in enumerate(b):
                out[self.a.dim + self.x.dim + j] = Fraction(v)
        return tuple(out)

    def blocks(self, t: Sequence[Fraction]) -> tuple[Vec, Vec, Vec]:
        a = tuple(t[i] for i in self.a_range)
        x = tuple(t[i] for i in self.x_range)
        b = tuple(t[i] for i in self.b_range)
        return a, x, b

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TriAlgebra):
            return NotImplemented
        return (self.a == other.a and self.b == other.b and self.x == other.x
                and self.twist == other.twist and self.carrier == other.carrier)

    def __repr__(self) -> str:
        return (f"TriAlgebra(dimA={self.a.dim}, dimX={self.x.dim}, "
                f"dimB={self.b.dim})")


def build_triangular(a: alg.FDAlgebra, b: alg.FDAlgebra, x: bim.Bimodule,
                     twist: Twist) -> TriAlgebra:
    """Assemble the carrier structure constants and validate everything.

    Component validation failures are re-raised with block attribution.
    """
    alg.require_valid_algebra(a, "diagonal algebra A")
    alg.require_valid_algebra(b, "diagonal algebra B")
    if x.left_algebra != a or x.right_algebra != b:
        raise ValidationError("bimodule X: component algebras do not match A and B")
    bim.require_valid_bimodule(x, "bimodule X")
    for name, auto, comp in (("sigma_A", twist.sigma_a, a), ("sigma_B", twist.sigma_b, b)):
        checked = alg.check_automorphism(comp, auto.matrix)
        if checked is None:
            raise ValidationError(f"twist {name}: not an algebra automorphism")
        if auto.matrix @ auto.inverse != RatMatrix.identity(comp.dim):
            raise ValidationError(f"twist {name}: stored inverse is wrong")

    na, nx, nb = a.dim, x.dim, b.dim
    dim = na + nx + nb
    off_x = na
    off_b = na + nx
    structure: alg.StructTensor = {}
    for (i, j), comps in a.structure.items():
        structure[(i, j)] = dict(comps)
    for (i, j), comps in b.structure.items():
        structure[(off_b + i, off_b + j)] = {off_b + k: v for k, v in comps.items()}
    for i in range(na):
        sa_ei = twist.sigma_a.apply(a.basis_vector(i))
        for p in range(nx):
            comps = {off_x + q: v
                     for q, v in enumerate(x.left_act(sa_ei, x.basis_vector(p))) if v}
            if comps:
                structure[(i, off_x + p)] = comps
    for j in range(nb):
        sb_ej = twist.sigma_b.apply(b.basis_vector(j))
        for p in range(nx):
            comps = {off_x + q: v
                     for q, v in enumerate(x.right_act(x.basis_vector(p), sb_ej)) if v}
            if comps:
                structure[(off_x + p, off_b + j)] = comps

    labels = ([f"a.{s}" for s in a.basis_labels]
              + [f"x.{p}" for p in range(nx)]
              + [f"b.{s}" for s in b.basis_labels])
    unit = tuple(a.unit) + zero_vec(nx) + tuple(b.unit)
    carrier = alg.FDAlgebra(dim, labels, structure, unit)
    t = TriAlgebra(a, b, x, twist, carrier)
    report = alg.check_algebra(carrier)
    if report:
        raise ValidationError("carrier: " + report[0],
                              ["carrier: " + line for line in report])
    return t


def peirce(t: TriAlgebra) -> tuple[Vec, Vec, dict]:
    """Peirce idempotents e11 = (1_A,0,0), e22 = (0,0,1_B) and a corner report.

    The report records the four corner dimensions and whether the diagonal
    corners reproduce the structure constants of A and B.
    """
    e11 = t.embed(a=t.a.unit)
    e22 = t.embed(b=t.b.unit)
    car = t.carrier

    def corner_span(p: Vec, q: Vec) -> list[Vec]:
        vs = []
        for s in range(car.dim):
            v = car.multiply(car.multiply(p, car.basis_vector(s)), q)
            if any(v):
                vs.append(v)
        return vs

    from ttba.exactlin import span_dim
    dims = {
        "a_corner": span_dim(corner_span(e11, e11), car.dim),
        "x_corner": span_dim(corner_span(e11, e22), car.dim),
        "b_corner": span_dim(corner_span(e22, e22), car.dim),
        "zero_corner": span_dim(corner_span(e22, e11), car.dim),
    }
    a_match = all(
        car.multiply(t.embed(a=t.a.basis_vector(i)), t.embed(a=t.a.basis_vector(j)))
        == t.embed(a=t.a.multiply(t.a.basis_vector(i), t.a.basis_vector(j)))
        for i in range(t.a.dim) for j in range(t.a.dim))
    b_match = all(
        car.multiply(t.embed(b=t.b.basis_vector(i)), t.embed(b=t.b.basis_vector(j)))
        == t.embed(b=t.b.multiply(t.b.basis_vector(i), t.b.basis_vector(j)))
        for i in range(t.b.dim) for j in range(t.b.dim))
    report = {
        "idempotents_complementary":
            car.multiply(e11, e11) == e11 and car.multiply(e22, e22) == e22
            and not any(car.multiply(e11, e22)) and not any(car.multiply(e22, e11))
            and tuple(u + v for u, v in zip(e11, e22)) == car.unit,
        "corner_dims": dims,
        "expected_dims": {"a_corner": t.a.dim, "x_corner": t.x.dim,
                          "b_corner": t.b.dim, "zero_corner": 0},
        "a_corner_matches_structure": a_match,
        "b_corner_matches_structure": b_match,
    }
    return e11, e22, report


def ideal_and_quotient(t: TriAlgebra) -> tuple[list[Vec], alg.FDAlgebra, RatMatrix]:
    """The square-zero ideal basis, the diagonal quotient Q = A (+) B, and the
    multiplicative projection pi killing the X-block."""
    car = t.carrier
    ideal = [car.basis_vector(i) for i in t.x_range]
    for v in ideal:
        for w in ideal:
            if any(car.multiply(v, w)):
                raise ValidationError("ideal is not square-zero")
    q = alg.direct_sum(t.a, t.b)
    pi = RatMatrix(q.dim, car.dim)
    for i in range(t.a.dim):
        pi._rows[i][i] = Fraction(1)
    for j in range(t.b.dim):
        pi._rows[t.a.dim + j][t.a.dim + t.x.dim + j] = Fraction(1)
    return ideal, q, pi


def ideal_bimodule(t: TriAlgebra) -> bim.Bimodule:
    """The carrier-bimodule structure on the square-zero ideal, read off from
    carrier multiplication (left action routes through sigma_A, right through
    sigma_B)."""
    car = t.carrier
    nx = t.x.dim
    off = t.a.dim
    left: bim.ActionTensor = {}
    right: bim.ActionTensor = {}
    for s in range(car.dim):
        es = car.basis_vector(s)
        for p in range(nx):
            xp = car.basis_vector(off + p)
            prod = car.multiply(es, xp)
            comps = {q: prod[off + q] for q in range(nx) if prod[off + q]}
            if comps:
                left[(s, p)] = comps
            prod = car.multiply(xp, es)
            comps = {q: prod[off + q] for q in range(nx) if prod[off + q]}
            if comps:
                right[(p, s)] = comps
    return bim.Bimodule(car, car, nx, left, right)


def tri_norm(t: TriAlgebra, coords: Sequence[Fraction]) -> Fraction:
    """Block l1 norm: the sum of absolute values of all coordinates in the
    declared bases."""
    if len(coords) != t.dim:
        raise ValueError("coordinate length mismatch")
    return sum((abs(Fraction(v)) for v in coords), Fraction(0))
