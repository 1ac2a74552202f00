"""Bundled example objects and their shipped definition files.

The JSON files under ``ttba/data`` are generated from the constructors here
(``python -m ttba.bundled <dir>`` regenerates them); tests assert the shipped
bytes match a fresh dump, so the two cannot drift.
"""

from __future__ import annotations

import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from ttba import algebra as alg
from ttba import bimodule as bim
from ttba import builders, fileio
from ttba import shear as sh
from ttba.isoclass import IsoData
from ttba.triangular import TriAlgebra, Twist, build_triangular, identity_twist


def scalar_triangular() -> TriAlgebra:
    """A = B = X = Q with the trivial twist: the 3-dimensional algebra of
    upper triangular 2x2 matrices."""
    q = builders.function_algebra(1, labels=["1"])
    x = bim.regular_bimodule(q)
    return build_triangular(q, q, x, identity_twist(q, q))


def m2_triangular() -> TriAlgebra:
    """A = M2, B = Q, X = the column space, with a nontrivial inner twist on
    M2 (conjugation by [[1, 1], [0, 1]]) and the identity on Q."""
    x = builders.rectangular_bimodule(2, 1)
    a, b = x.left_algebra, x.right_algebra
    s = (Fraction(1), Fraction(1), Fraction(0), Fraction(1))  # [[1,1],[0,1]]
    sigma_a = builders.inner_automorphism(a, s)
    return build_triangular(a, b, x, Twist(sigma_a, alg.identity_automorphism(b)))


def c3_triangular() -> TriAlgebra:
    """A = B = X = the rational group algebra of the 3-element cyclic group,
    twisted by (inversion, identity)."""
    g = builders.cyclic_group(3)
    inversion = tuple(g.inv(i) for i in range(3))
    return builders.group_triangular(g, inversion, tuple(range(3)))


def x_zero_triangular() -> TriAlgebra:
    """A = B = Q with X = 0: degenerates to the two-dimensional diagonal."""
    q = builders.function_algebra(1, labels=["1"])
    x = bim.zero_bimodule(q, q)
    return build_triangular(q, q, x, identity_twist(q, q))


def anchored_system_a() -> builders.AnchoredFunctionSystem:
    return builders.AnchoredFunctionSystem(
        k=2, l=2, omega=3, p=(0, 1, 0), q=(0, 1, 1), phi=(1, 0), psi=(0, 1))


def anchored_system_b() -> builders.AnchoredFunctionSystem:
    return builders.AnchoredFunctionSystem(
        k=3, l=2, omega=4, p=(0, 1, 2, 0), q=(0, 1, 1, 0),
        phi=(1, 2, 0), psi=(1, 0))


def anchored_system_c() -> builders.AnchoredFunctionSystem:
    return builders.AnchoredFunctionSystem(
        k=1, l=1, omega=2, p=(0, 0), q=(0, 0), phi=(0,), psi=(0,))


def anchored_triangular_a() -> TriAlgebra:
    return builders.anchored_triangular(anchored_system_a())


def _tri_def(t: TriAlgebra) -> fileio.TriangularDef:
    return fileio.TriangularDef(t.a, t.b, t.x, t.twist.sigma_a.matrix,
                                t.twist.sigma_b.matrix)


def _group_def(g: builders.FiniteGroup) -> fileio.GroupDef:
    return fileio.GroupDef(g.element_labels, g.cayley)


def c3_iso_data_def() -> fileio.IsoDataDef:
    """A self-witness for the C3 triangle: alpha = beta = u = the inversion
    permutation twist, theta = 0 (automorphism group conjugation is trivial
    for an abelian automorphism group, so source and target twists agree)."""
    g = builders.cyclic_group(3)
    inversion = tuple(g.inv(i) for i in range(3))
    s_delta = builders.sigma_gamma(g, inversion)
    d = IsoData(s_delta, s_delta, s_delta.matrix, sh.zero_shear(3, 3, 3))
    return fileio.iso_data_def_from_witness(d, "tri_c3.json", "tri_c3.json")


BUNDLED = {
    "tri_scalar.json": lambda: _tri_def(scalar_triangular()),
    "tri_m2.json": lambda: _tri_def(m2_triangular()),
    "tri_c3.json": lambda: _tri_def(c3_triangular()),
    "tri_x0.json": lambda: _tri_def(x_zero_triangular()),
    "tri_anchored.json": lambda: _tri_def(anchored_triangular_a()),
    "anchored_a.json": lambda: fileio.AnchoredDef(anchored_system_a()),
    "anchored_b.json": lambda: fileio.AnchoredDef(anchored_system_b()),
    "anchored_c.json": lambda: fileio.AnchoredDef(anchored_system_c()),
    "group_c3.json": lambda: _group_def(builders.cyclic_group(3)),
    "group_s3.json": lambda: _group_def(builders.symmetric_group_s3()),
    "algebra_m2.json": lambda: fileio.AlgebraDef(builders.matrix_algebra(2)),
    "algebra_q2.json": lambda: fileio.AlgebraDef(builders.function_algebra(2)),
    "isodata_c3.json": c3_iso_data_def,
}

TRIANGULAR_FILES = ("tri_scalar.json", "tri_m2.json", "tri_c3.json",
                    "tri_x0.json", "tri_anchored.json")


def data_path(name: str) -> Path:
    """Filesystem path of a shipped definition file."""
    if name not in BUNDLED:
        raise KeyError(f"no bundled file {name!r}")
    return Path(str(resources.files("ttba").joinpath("data", name)))


def write_all(directory: str | Path) -> list[Path]:
    out = []
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for name, build in BUNDLED.items():
        path = directory / name
        path.write_text(fileio.dumps_definition(build()), encoding="utf-8")
        out.append(path)
    return out


if __name__ == "__main__":
    target = sys.argv[1] if len(sys.argv) > 1 else "src/ttba/data"
    for p in write_all(target):
        print(p)
