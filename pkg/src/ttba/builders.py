"""Constructors for the bundled example families: matrix algebras, finite-set
function algebras with anchored bimodules, finite groups from Cayley tables,
group algebras, group-induced twists, and Aut(G) enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from ttba import algebra as alg
from ttba import bimodule as bim
from ttba import exactlin
from ttba.errors import SearchBoundExceeded, ValidationError
from ttba.exactlin import RatMatrix
from ttba.triangular import TriAlgebra, Twist, build_triangular

DEFAULT_AUT_BOUND = 12


# ---------------------------------------------------------------------------
# matrix and function algebras


def matrix_algebra(n: int) -> alg.FDAlgebra:
    """M_n over the rationals on the matrix-unit basis e_ij (row-major)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    dim = n * n

    def idx(i: int, j: int) -> int:
        return i * n + j

    structure: alg.StructTensor = {}
    for i, j, k, l in product(range(n), repeat=4):
        if j == k:
            structure[(idx(i, j), idx(k, l))] = {idx(i, l): Fraction(1)}
    labels = [f"e{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    unit = [Fraction(0)] * dim
    for i in range(n):
        unit[idx(i, i)] = Fraction(1)
    return alg.FDAlgebra(dim, labels, structure, tuple(unit))


def rectangular_bimodule(n: int, m: int) -> bim.Bimodule:
    """M_{n,m} as an M_n - M_m bimodule by matrix multiplication.

    For m = 1 this is the column space acted on by M_n and scalars.
    """
    a = matrix_algebra(n)
    b = matrix_algebra(m)
    dim = n * m

    def xidx(i: int, j: int) -> int:
        return i * m + j

    left: bim.ActionTensor = {}
    for i, j in product(range(n), repeat=2):
        for k, l in product(range(n), range(m)):
            if j == k:
                left[(i * n + j, xidx(k, l))] = {xidx(i, l): Fraction(1)}
    right: bim.ActionTensor = {}
    for k, l in product(range(n), range(m)):
        for i, j in product(range(m), repeat=2):
            if l == i:
                right[(xidx(k, l), i * m + j)] = {xidx(k, j): Fraction(1)}
    return bim.Bimodule(a, b, dim, left, right)


def inner_automorphism(a: alg.FDAlgebra, s: Sequence[Fraction]) -> alg.Automorphism:
    """Conjugation x -> s x s^-1 by an invertible element, as a verified
    automorphism."""
    ls = a.left_mult_matrix(s)
    rs_inv = exactlin.inverse(a.right_mult_matrix(s))
    if rs_inv is None:
        raise ValidationError("conjugating element is not invertible")
    m = rs_inv @ ls
    auto = alg.check_automorphism(a, m)
    if auto is None:
        raise ValidationError("conjugation did not yield an automorphism")
    return auto


def function_algebra(k: int, labels: Sequence[str] | None = None) -> alg.FDAlgebra:
    """Pointwise functions on a k-element set: indicator basis, idempotent
    products, all-ones unit."""
    if k < 1:
        raise ValueError("the index set must be nonempty")
    structure: alg.StructTensor = {(i, i): {i: Fraction(1)} for i in range(k)}
    if labels is None:
        labels = [f"d{i}" for i in range(k)]
    return alg.FDAlgebra(k, list(labels), structure, (Fraction(1),) * k)


@dataclass(frozen=True)
class AnchoredFunctionSystem:
    """Finite sets K, L, Omega with anchors p: Omega -> K, q: Omega -> L and
    permutation twists phi of K, psi of L."""

    k: int
    l: int
    omega: int
    p: tuple[int, ...]
    q: tuple[int, ...]
    phi: tuple[int, ...]
    psi: tuple[int, ...]

    def validate(self) -> list[str]:
        report = []
        if len(self.p) != self.omega or not all(0 <= v < self.k for v in self.p):
            report.append("anchor p is not a total map into K")
        if len(self.q) != self.omega or not all(0 <= v < self.l for v in self.q):
            report.append("anchor q is not a total map into L")
        if sorted(self.phi) != list(range(self.k)):
            report.append("phi is not a permutation of K")
        if sorted(self.psi) != list(range(self.l)):
            report.append("psi is not a permutation of L")
        return report


def permutation_matrix(perm: Sequence[int]) -> RatMatrix:
    """Matrix sending basis vector i to basis vector perm[i]."""
    n = len(perm)
    m = RatMatrix(n, n)
    for i, target in enumerate(perm):
        m._rows[target][i] = Fraction(1)
    return m


def inverse_perm(perm: Sequence[int]) -> list[int]:
    out = [0] * len(perm)
    for i, v in enumerate(perm):
        out[v] = i
    return out


def compose_perm(outer: Sequence[int], inner: Sequence[int]) -> tuple[int, ...]:
    """outer after inner."""
    return tuple(outer[inner[i]] for i in range(len(inner)))


def anchored_bimodule(sys: AnchoredFunctionSystem) \
        -> tuple[alg.FDAlgebra, alg.FDAlgebra, bim.Bimodule, Twist]:
    """Realize (f . xi . g)(w) = f(p(w)) xi(w) g(q(w)) with twists f -> f o phi
    and g -> g o psi.

    On indicator bases the twists are the permutation matrices of phi^-1 and
    psi^-1 (precomposition moves points the other way).
    """
    report = sys.validate()
    if report:
        raise ValidationError("anchored system: " + report[0],
                              ["anchored system: " + r for r in report])
    a = function_algebra(sys.k)
    b = function_algebra(sys.l)
    left: bim.ActionTensor = {}
    right: bim.ActionTensor = {}
    for w in range(sys.omega):
        left[(sys.p[w], w)] = {w: Fraction(1)}
        right[(w, sys.q[w])] = {w: Fraction(1)}
    x = bim.Bimodule(a, b, sys.omega, left, right)
    sigma_a = alg.check_automorphism(a, permutation_matrix(inverse_perm(sys.phi)))
    sigma_b = alg.check_automorphism(b, permutation_matrix(inverse_perm(sys.psi)))
    assert sigma_a is not None and sigma_b is not None
    return a, b, x, Twist(sigma_a, sigma_b)


def anchored_triangular(sys: AnchoredFunctionSystem) -> TriAlgebra:
    a, b, x, twist = anchored_bimodule(sys)
    return build_triangular(a, b, x, twist)


# ---------------------------------------------------------------------------
# finite groups


@dataclass(frozen=True)
class FiniteGroup:
    order: int
    element_labels: tuple[str, ...]
    cayley: tuple[tuple[int, ...], ...]
    identity_index: int

    def mul(self, i: int, j: int) -> int:
        return self.cayley[i][j]

    def inv(self, i: int) -> int:
        for j in range(self.order):
            if self.cayley[i][j] == self.identity_index:
                return j
        raise ValueError(f"element {i} has no inverse")

    def element_order(self, i: int) -> int:
        n, x = 1, i
        while x != self.identity_index:
            x = self.mul(x, i)
            n += 1
        return n


def group_from_cayley(table: Sequence[Sequence[int]],
                      labels: Sequence[str] | None = None) -> FiniteGroup:
    """Validate a Cayley table and wrap it; errors name the violated axiom
    and the offending cell or triple."""
    n = len(table)
    if n == 0:
        raise ValidationError("Cayley table is empty")
    rows = []
    for i, row in enumerate(table):
        if len(row) != n:
            raise ValidationError(f"Cayley row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if not isinstance(v, int) or not 0 <= v < n:
                raise ValidationError(f"Cayley cell ({i}, {j}) = {v!r} out of range")
        rows.append(tuple(row))
    cayley = tuple(rows)
    for i in range(n):
        if sorted(cayley[i]) != list(range(n)):
            raise ValidationError(f"Latin square fails: row {i} has repeats")
        col = sorted(cayley[r][i] for r in range(n))
        if col != list(range(n)):
            raise ValidationError(f"Latin square fails: column {i} has repeats")
    for i, j, k in product(range(n), repeat=3):
        if cayley[cayley[i][j]][k] != cayley[i][cayley[j][k]]:
            raise ValidationError(
                f"associativity fails at triple ({i}, {j}, {k})")
    identity = None
    for e in range(n):
        if all(cayley[e][i] == i and cayley[i][e] == i for i in range(n)):
            identity = e
            break
    if identity is None:
        raise ValidationError("no identity element")
    for i in range(n):
        if identity not in cayley[i]:
            raise ValidationError(f"element {i} has no inverse")
    if labels is None:
        labels = [f"g{i}" for i in range(n)]
    return FiniteGroup(n, tuple(labels), cayley, identity)


def cyclic_group(n: int) -> FiniteGroup:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    labels = ["e"] + [f"g{'^' + str(i) if i > 1 else ''}" for i in range(1, n)]
    return group_from_cayley(table, labels)


def symmetric_group_s3() -> FiniteGroup:
    """S3 on {1,2,3}; elements listed as permutation tuples in lexicographic
    order of one-line notation."""
    elems = [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]
    index = {p: i for i, p in enumerate(elems)}

    def mul(p, q):  # apply q first, then p
        return tuple(p[q[i]] for i in range(3))

    table = [[index[mul(p, q)] for q in elems] for p in elems]
    labels = ["".join(str(v + 1) for v in p) for p in elems]
    return group_from_cayley(table, labels)


def group_algebra(g: FiniteGroup) -> alg.FDAlgebra:
    """Rational group algebra: e_gi * e_gj = e_{gi gj}."""
    structure: alg.StructTensor = {}
    for i, j in product(range(g.order), repeat=2):
        structure[(i, j)] = {g.mul(i, j): Fraction(1)}
    unit = [Fraction(0)] * g.order
    unit[g.identity_index] = Fraction(1)
    return alg.FDAlgebra(g.order, list(g.element_labels), structure, tuple(unit))


def group_regular_bimodule(g: FiniteGroup) \
        -> tuple[alg.FDAlgebra, alg.FDAlgebra, bim.Bimodule]:
    """A = B = X = the group algebra with convolution actions a . x . b."""
    a = group_algebra(g)
    x = bim.regular_bimodule(a)
    return a, a, x


def group_triangular(g: FiniteGroup, gamma_a: Sequence[int],
                     gamma_b: Sequence[int]) -> TriAlgebra:
    """Twisted triangular algebra over (QG, QG, QG) with group-induced twists."""
    a, b, x = group_regular_bimodule(g)
    twist = Twist(sigma_gamma(g, gamma_a, a), sigma_gamma(g, gamma_b, b))
    return build_triangular(a, b, x, twist)


def is_group_automorphism(g: FiniteGroup, gamma: Sequence[int]) -> bool:
    if sorted(gamma) != list(range(g.order)):
        return False
    return all(gamma[g.mul(i, j)] == g.mul(gamma[i], gamma[j])
               for i in range(g.order) for j in range(g.order))


def sigma_gamma(g: FiniteGroup, gamma: Sequence[int],
                qg: alg.FDAlgebra | None = None) -> alg.Automorphism:
    """Group-induced twist: the permutation matrix e_h -> e_{gamma(h)}.

    On coefficient functions this is f -> f o gamma^-1, so gamma -> sigma_gamma
    is covariant: sigma_{gamma delta} = sigma_gamma o sigma_delta.
    """
    if not is_group_automorphism(g, gamma):
        raise ValidationError("gamma is not a group automorphism")
    if qg is None:
        qg = group_algebra(g)
    auto = alg.check_automorphism(qg, permutation_matrix(gamma))
    assert auto is not None
    return auto


def _generating_sequence(g: FiniteGroup) -> list[int]:
    """Greedy generating set: add the first element outside the closure."""
    closure = {g.identity_index}
    gens: list[int] = []
    while len(closure) < g.order:
        nxt = min(i for i in range(g.order) if i not in closure)
        gens.append(nxt)
        closed = set(closure) | {nxt}
        changed = True
        while changed:
            changed = False
            for i in list(closed):
                for j in list(closed):
                    k = g.mul(i, j)
                    if k not in closed:
                        closed.add(k)
                        changed = True
        closure = closed
    return gens


def group_automorphisms(g: FiniteGroup,
                        bound: int = DEFAULT_AUT_BOUND) -> list[tuple[int, ...]]:
    """Complete list of Aut(G) as index permutations, sorted lexicographically.

    Generator-image search with order-preservation pruning and Cayley
    consistency closure; exhaustive for |G| <= bound.
    """
    if g.order > bound:
        raise SearchBoundExceeded(
            f"group order {g.order} exceeds the enumeration bound {bound}")
    gens = _generating_sequence(g)
    orders = [g.element_order(i) for i in range(g.order)]
    candidates = [[x for x in range(g.order) if orders[x] == orders[gen]]
                  for gen in gens]
    found: list[tuple[int, ...]] = []

    def extend(images: list[int]) -> tuple[int, ...] | None:
        """Close a partial assignment gens -> images into a full endomorphism
        consistent with the table, or None on conflict."""
        mapping = {g.identity_index: g.identity_index}
        for gen, img in zip(gens, images):
            if mapping.get(gen, img) != img:
                return None
            mapping[gen] = img
        changed = True
        while changed:
            changed = False
            known = list(mapping.items())
            for i, mi in known:
                for j, mj in known:
                    k = g.mul(i, j)
                    mk = g.mul(mi, mj)
                    if k in mapping:
                        if mapping[k] != mk:
                            return None
                    else:
                        mapping[k] = mk
                        changed = True
        if len(mapping) != g.order:
            return None
        image = tuple(mapping[i] for i in range(g.order))
        if sorted(image) != list(range(g.order)):
            return None
        return image

    for images in product(*candidates):
        gamma = extend(list(images))
        if gamma is not None and gamma not in found:
            found.append(gamma)
    return sorted(found)
