"""Classification witnesses between twisted triangular algebras.

A witness (alpha, beta, u, theta) is verified against three conditions:
conjugacy of the diagonal twists, (alpha, beta)-equivariance of u, and the
target-twist cocycle identity for theta.  Accepted witnesses produce an
explicit isomorphism matrix Phi with a closed-form inverse Psi; search
routines look for witnesses in the group-algebra and finite function-algebra
families.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import factorial
from typing import Sequence

from ttba import algebra as alg
from ttba import bimodule as bim
from ttba import builders, exactlin
from ttba import shear as sh
from ttba.errors import SearchBoundExceeded, ValidationError
from ttba.exactlin import RatMatrix, Vec
from ttba.triangular import TriAlgebra
from ttba.builders import AnchoredFunctionSystem, FiniteGroup


@dataclass(frozen=True, eq=False)
class IsoData:
    alpha: alg.Automorphism
    beta: alg.Automorphism
    u: RatMatrix
    theta: sh.Shear

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IsoData):
            return NotImplemented
        return (self.alpha == other.alpha and self.beta == other.beta
                and self.u == other.u and self.theta == other.theta)


@dataclass(frozen=True)
class IsoVerdict:
    conjugacy_a: bool
    conjugacy_b: bool
    u_invertible: bool
    equivariance: bool
    cocycle: bool
    details: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return (self.conjugacy_a and self.conjugacy_b and self.u_invertible
                and self.equivariance and self.cocycle)

    def as_dict(self) -> dict:
        return {
            "conjugacy_a": self.conjugacy_a,
            "conjugacy_b": self.conjugacy_b,
            "u_invertible": self.u_invertible,
            "equivariance": self.equivariance,
            "cocycle": self.cocycle,
            "passed": self.passed,
            "details": list(self.details),
        }


def identity_iso_data(t: TriAlgebra) -> IsoData:
    return IsoData(alg.identity_automorphism(t.a), alg.identity_automorphism(t.b),
                   RatMatrix.identity(t.x.dim),
                   sh.zero_shear(t.a.dim, t.b.dim, t.x.dim))


def lambda_iso_data(t: TriAlgebra, theta: sh.Shear) -> IsoData:
    """The witness (id, id, id, theta) of a shear automorphism."""
    return IsoData(alg.identity_automorphism(t.a), alg.identity_automorphism(t.b),
                   RatMatrix.identity(t.x.dim), theta)


def verify_iso_data(t_sigma: TriAlgebra, t_tau: TriAlgebra, d: IsoData) -> IsoVerdict:
    """Itemized verdict for a witness from t_sigma to t_tau.

    The equivariance check feeds elements through the source bimodule actions
    inside u and the target actions outside, so the two triangular algebras
    may carry bimodules with different anchors (same dimensions required).
    """
    a, b = t_sigma.a, t_sigma.b
    xs, xt = t_sigma.x, t_tau.x
    if (t_tau.a.dim != a.dim or t_tau.b.dim != b.dim or xt.dim != xs.dim):
        raise ValidationError("component shapes do not match")
    details = []

    sa, sb = t_sigma.twist.sigma_a, t_sigma.twist.sigma_b
    ta, tb = t_tau.twist.sigma_a, t_tau.twist.sigma_b

    conj_a = ta.matrix == d.alpha.matrix @ sa.matrix @ d.alpha.inverse
    if not conj_a:
        details.append("diagonal conjugacy fails on the A side")
    conj_b = tb.matrix == d.beta.matrix @ sb.matrix @ d.beta.inverse
    if not conj_b:
        details.append("diagonal conjugacy fails on the B side")

    u_inv = exactlin.inverse(d.u)
    if u_inv is None:
        details.append("u is singular")

    equivariant = True
    for i, p, j in product(range(a.dim), range(xs.dim), range(b.dim)):
        lhs = d.u.mul_vec(xs.act(a.basis_vector(i), xs.basis_vector(p),
                                 b.basis_vector(j)))
        rhs = xt.act(d.alpha.apply(a.basis_vector(i)),
                     d.u.mul_vec(xs.basis_vector(p)),
                     d.beta.apply(b.basis_vector(j)))
        if lhs != rhs:
            equivariant = False
            details.append(
                f"equivariance fails at basis triple ({i}, {p}, {j})")
            break

    cocycle_ok = _theta_satisfies_target_cocycle(t_tau, d, details)

    return IsoVerdict(conj_a, conj_b, u_inv is not None, equivariant,
                      cocycle_ok, tuple(details))


def _theta_satisfies_target_cocycle(t_tau: TriAlgebra, d: IsoData,
                                    details: list[str]) -> bool:
    """theta(aa', bb') = tau_A(alpha(a)).theta(a', b') + theta(a, b).tau_B(beta(b')),
    split into its three bilinear pieces (arguments set to zero pairwise), which
    together are equivalent to the identity for all arguments."""
    a, b, xt = t_tau.a, t_tau.b, t_tau.x
    ta, tb = t_tau.twist.sigma_a, t_tau.twist.sigma_b
    f, g = d.theta.f, d.theta.g
    for i, i2 in product(range(a.dim), repeat=2):
        prod_ii = a.multiply(a.basis_vector(i), a.basis_vector(i2))
        lhs = f.mul_vec(prod_ii)
        rhs = xt.left_act(ta.apply(d.alpha.apply(a.basis_vector(i))),
                          f.column_vec(i2))
        if lhs != rhs:
            details.append(f"cocycle identity fails on the A-A piece at ({i}, {i2})")
            return False
    for j, j2 in product(range(b.dim), repeat=2):
        prod_jj = b.multiply(b.basis_vector(j), b.basis_vector(j2))
        lhs = g.mul_vec(prod_jj)
        rhs = xt.right_act(g.column_vec(j),
                           tb.apply(d.beta.apply(b.basis_vector(j2))))
        if lhs != rhs:
            details.append(f"cocycle identity fails on the B-B piece at ({j}, {j2})")
            return False
    for i, j2 in product(range(a.dim), range(b.dim)):
        mixed = exactlin.vec_add(
            xt.left_act(ta.apply(d.alpha.apply(a.basis_vector(i))),
                        g.column_vec(j2)),
            xt.right_act(f.column_vec(i),
                         tb.apply(d.beta.apply(b.basis_vector(j2)))))
        if any(mixed):
            details.append(f"cocycle identity fails on the mixed piece at ({i}, {j2})")
            return False
    return True


def build_phi(t_sigma: TriAlgebra, t_tau: TriAlgebra, d: IsoData) \
        -> tuple[RatMatrix, RatMatrix]:
    """The isomorphism Phi(a, x, b) = (alpha(a), u(x) + theta(a, b), beta(b))
    and its closed-form inverse
    Psi(a, x, b) = (alpha^-1(a), u^-1(x - theta(alpha^-1(a), beta^-1(b))), beta^-1(b)).

    Refuses to build when verification fails.  Postconditions (checked):
    Phi is multiplicative on all basis pairs and Psi o Phi = Phi o Psi = id.
    """
    verdict = verify_iso_data(t_sigma, t_tau, d)
    if not verdict.passed:
        raise ValidationError(
            "refusing to build an isomorphism from rejected data: "
            + "; ".join(verdict.details))
    na, nx, nb = t_sigma.a.dim, t_sigma.x.dim, t_sigma.b.dim
    dim = na + nx + nb
    u_inv = exactlin.inverse(d.u)
    assert u_inv is not None

    phi = _assemble_block_map(d.alpha.matrix, d.beta.matrix, d.u,
                              d.theta.f, d.theta.g, na, nx, nb)
    psi_f = -(u_inv @ d.theta.f @ d.alpha.inverse)
    psi_g = -(u_inv @ d.theta.g @ d.beta.inverse)
    psi = _assemble_block_map(d.alpha.inverse, d.beta.inverse, u_inv,
                              psi_f, psi_g, na, nx, nb)

    eye = RatMatrix.identity(dim)
    if psi @ phi != eye or phi @ psi != eye:
        raise ValidationError("inverse verification failed")
    for s, t in product(range(dim), repeat=2):
        lhs = phi.mul_vec(t_sigma.carrier.multiply(
            t_sigma.carrier.basis_vector(s), t_sigma.carrier.basis_vector(t)))
        rhs = t_tau.carrier.multiply(phi.column_vec(s), phi.column_vec(t))
        if lhs != rhs:
            raise ValidationError(
                f"constructed map is not multiplicative at basis pair ({s}, {t})")
    return phi, psi


def _assemble_block_map(a_block: RatMatrix, b_block: RatMatrix, u_block: RatMatrix,
                        f: RatMatrix, g: RatMatrix,
                        na: int, nx: int, nb: int) -> RatMatrix:
    dim = na + nx + nb
    m = RatMatrix(dim, dim)
    for r in range(na):
        for c, v in a_block._rows[r].items():
            m._rows[r][c] = v
    for r in range(nx):
        for c, v in u_block._rows[r].items():
            m._rows[na + r][na + c] = v
        for c, v in f._rows[r].items():
            m._rows[na + r][c] = v
        for c, v in g._rows[r].items():
            m._rows[na + r][na + nx + c] = v
    for r in range(nb):
        for c, v in b_block._rows[r].items():
            m._rows[na + nx + r][na + nx + c] = v
    return m


def characteristic_ideal_check(phi: RatMatrix, t_sigma: TriAlgebra,
                               t_tau: TriAlgebra) -> str:
    """Check that an algebra isomorphism maps the square-zero ideal onto the
    square-zero ideal (rank test on the X-block spans).

    Precondition (enforced): phi is invertible and multiplicative.  Returns
    "pass", "fail", or "not applicable, X = 0".
    """
    if exactlin.inverse(phi) is None:
        raise ValidationError("characteristic ideal check: phi is singular")
    car_s, car_t = t_sigma.carrier, t_tau.carrier
    for s, t in product(range(car_s.dim), repeat=2):
        lhs = phi.mul_vec(car_s.multiply(car_s.basis_vector(s), car_s.basis_vector(t)))
        rhs = car_t.multiply(phi.column_vec(s), phi.column_vec(t))
        if lhs != rhs:
            raise ValidationError(
                "characteristic ideal check: phi is not multiplicative")
    if t_sigma.x.dim == 0:
        return "not applicable, X = 0"
    ideal = [car_s.basis_vector(i) for i in t_sigma.x_range]
    images = [phi.mul_vec(v) for v in ideal]
    target = [car_t.basis_vector(i) for i in t_tau.x_range]
    stacked = exactlin.span_dim(images + target, car_t.dim)
    ok = (exactlin.span_dim(images, car_t.dim) == t_sigma.x.dim
          and stacked == t_sigma.x.dim)
    return "pass" if ok else "fail"


# ---------------------------------------------------------------------------
# searches


GROUP_FAMILY_SCOPE = ("search restricted to group-induced automorphisms; "
                      "absence is relative to that family, not a proof of "
                      "non-isomorphism")
FUNCTION_FAMILY_SCOPE = ("exhaustive search over basis permutations; for split "
                         "commutative semisimple diagonals in the standard "
                         "basis this enumerates all algebra automorphisms, so "
                         "absence certifies non-isomorphism")


def search_iso_group(g: FiniteGroup, gamma_a: Sequence[int], gamma_b: Sequence[int],
                     gamma_a2: Sequence[int], gamma_b2: Sequence[int],
                     bound: int = builders.DEFAULT_AUT_BOUND) -> IsoData | None:
    """Witness search for group-algebra triangles: twists sigma_(gamma) vs
    sigma_(gamma'), conjugating delta drawn from the enumerated Aut(G).

    Tries a common delta first (u = sigma_delta, theta = 0); then pairs
    (delta_a, delta_b) with u solved from the linear equivariance system and
    probed for invertibility on a deterministic sequence of 8 combinations.
    Returns the first witness in enumeration order, or None.
    """
    for gamma in (gamma_a, gamma_b, gamma_a2, gamma_b2):
        if not builders.is_group_automorphism(g, gamma):
            raise ValidationError("supplied twist is not a group automorphism")
    auts = builders.group_automorphisms(g, bound)
    qg = builders.group_algebra(g)

    def conj(delta: tuple[int, ...], gamma: Sequence[int]) -> tuple[int, ...]:
        inv = builders.inverse_perm(delta)
        return builders.compose_perm(delta, builders.compose_perm(tuple(gamma), inv))

    ga, gb = tuple(gamma_a), tuple(gamma_b)
    ga2, gb2 = tuple(gamma_a2), tuple(gamma_b2)
    for delta in auts:
        if conj(delta, ga) == ga2 and conj(delta, gb) == gb2:
            s_delta = builders.sigma_gamma(g, delta, qg)
            return IsoData(s_delta, s_delta, s_delta.matrix,
                           sh.zero_shear(g.order, g.order, g.order))
    for delta_a, delta_b in product(auts, repeat=2):
        if delta_a == delta_b:
            continue
        if conj(delta_a, ga) != ga2 or conj(delta_b, gb) != gb2:
            continue
        alpha = builders.sigma_gamma(g, delta_a, qg)
        beta = builders.sigma_gamma(g, delta_b, qg)
        u = _solve_equivariant_u(qg, alpha, beta)
        if u is not None:
            return IsoData(alpha, beta, u,
                           sh.zero_shear(g.order, g.order, g.order))
    return None


def _solve_equivariant_u(qg: alg.FDAlgebra, alpha: alg.Automorphism,
                         beta: alg.Automorphism) -> RatMatrix | None:
    """Solve u(a x b) = alpha(a) u(x) beta(b) on the regular bimodule and pick
    an invertible solution from a fixed 8-candidate sample, if any."""
    n = qg.dim
    xmod = bim.regular_bimodule(qg)
    rows: list[dict[int, Fraction]] = []
    # unknowns u[r][c] flattened r*n + c
    for i, p, j in product(range(n), repeat=3):
        axb = xmod.act(qg.basis_vector(i), qg.basis_vector(p), qg.basis_vector(j))
        lm = xmod.left_matrix(alpha.apply(qg.basis_vector(i)))
        rm = xmod.right_matrix(beta.apply(qg.basis_vector(j)))
        outer = rm @ lm
        for r in range(n):
            row: dict[int, Fraction] = {}
            for c, v in enumerate(axb):
                if v:
                    row[r * n + c] = v
            # subtract (outer @ u)[r][p] = sum_y outer[r][y] u[y][p]
            for y, v in outer._rows[r].items():
                key = y * n + p
                w = row.get(key, Fraction(0)) - v
                if w:
                    row[key] = w
                else:
                    row.pop(key, None)
            if row:
                rows.append(row)
    system = RatMatrix.from_row_dicts(rows, n * n)
    basis = exactlin.kernel_basis(system)
    if not basis:
        return None

    def unflatten(vec: Sequence[Fraction]) -> RatMatrix:
        m = RatMatrix(n, n)
        for r in range(n):
            for c in range(n):
                v = vec[r * n + c]
                if v:
                    m._rows[r][c] = Fraction(v)
        return m

    candidates: list[Vec] = []
    for v in basis:
        candidates.append(v)
    if len(basis) > 1:
        dim = len(basis[0])
        combos = [
            tuple(sum((b[c] for b in basis), Fraction(0)) for c in range(dim)),
            tuple(sum(((k + 1) * b[c] for k, b in enumerate(basis)), Fraction(0))
                  for c in range(dim)),
            tuple(sum(((-1) ** k * b[c] for k, b in enumerate(basis)), Fraction(0))
                  for c in range(dim)),
            tuple(sum((Fraction(2 ** k) * b[c] for k, b in enumerate(basis)),
                      Fraction(0)) for c in range(dim)),
        ]
        candidates.extend(combos)
    for v in candidates[:8]:
        m = unflatten(v)
        if exactlin.inverse(m) is not None:
            return m
    return None


@dataclass(frozen=True)
class FunctionWitness:
    h_k: tuple[int, ...]
    h_l: tuple[int, ...]
    h_omega: tuple[int, ...]
    iso: IsoData


def search_iso_function(sys_sigma: AnchoredFunctionSystem,
                        sys_tau: AnchoredFunctionSystem,
                        max_search: int = 1_000_000) -> FunctionWitness | None:
    """Exhaustive search for permutations (h_K, h_L, H) intertwining two
    anchored systems:

        h_K o phi = phi' o h_K,  h_L o psi = psi' o h_L,
        p' o H = h_K o p,        q' o H = h_L o q.

    Returns the first witness in lexicographic order, or None.  Raises
    SearchBoundExceeded when |K|! |L|! |Omega|! exceeds ``max_search``.
    """
    if (sys_sigma.k, sys_sigma.l, sys_sigma.omega) != (sys_tau.k, sys_tau.l, sys_tau.omega):
        raise ValidationError("anchored systems have different underlying sets")
    total = factorial(sys_sigma.k) * factorial(sys_sigma.l) * factorial(sys_sigma.omega)
    if total > max_search:
        raise SearchBoundExceeded(
            f"search space {total} exceeds the bound {max_search}")
    k, l, omega = sys_sigma.k, sys_sigma.l, sys_sigma.omega
    for h_k in permutations(range(k)):
        if builders.compose_perm(h_k, sys_sigma.phi) != \
                builders.compose_perm(sys_tau.phi, h_k):
            continue
        for h_l in permutations(range(l)):
            if builders.compose_perm(h_l, sys_sigma.psi) != \
                    builders.compose_perm(sys_tau.psi, h_l):
                continue
            for h_o in permutations(range(omega)):
                if all(sys_tau.p[h_o[w]] == h_k[sys_sigma.p[w]] for w in range(omega)) \
                        and all(sys_tau.q[h_o[w]] == h_l[sys_sigma.q[w]] for w in range(omega)):
                    iso = IsoData(
                        _perm_automorphism(k, h_k),
                        _perm_automorphism(l, h_l),
                        builders.permutation_matrix(h_o),
                        sh.zero_shear(k, l, omega))
                    return FunctionWitness(h_k, h_l, h_o, iso)
    return None


def _perm_automorphism(n: int, perm: Sequence[int]) -> alg.Automorphism:
    m = builders.permutation_matrix(perm)
    inv = builders.permutation_matrix(builders.inverse_perm(perm))
    return alg.Automorphism(m, inv)


@dataclass(frozen=True)
class ConjugacyClass:
    representative: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.members)


def classify_twists(g: FiniteGroup,
                    bound: int = builders.DEFAULT_AUT_BOUND) -> list[ConjugacyClass]:
    """Partition the enumerated Aut(G) into conjugacy classes; classes are
    ordered by the enumeration index of their first member."""
    auts = builders.group_automorphisms(g, bound)
    seen: set[tuple[int, ...]] = set()
    classes = []
    for gamma in auts:
        if gamma in seen:
            continue
        orbit = set()
        for delta in auts:
            inv = builders.inverse_perm(delta)
            orbit.add(builders.compose_perm(delta, builders.compose_perm(gamma, inv)))
        members = tuple(sorted(orbit))
        seen.update(members)
        classes.append(ConjugacyClass(gamma, members))
    return classes
