"""Exact-arithmetic workbench for twisted triangular algebras.

Builds T(A, B; X) with twisted off-diagonal actions from structure-constant
data, computes shear cocycle spaces, verifies and searches classification
witnesses, and computes Hochschild cohomology and cohomological dimension,
all over exact rationals.
"""

from ttba._backend import kernel_backend
from ttba.algebra import Automorphism, FDAlgebra, check_algebra, check_automorphism
from ttba.bimodule import Bimodule, check_bimodule, dual_bimodule, twisted_dual
from ttba.exactlin import RatMatrix, Rational, kernel_basis, rank, solve
from ttba.hochschild import bidimension, cd_formula_check, hochschild_dim
from ttba.isoclass import IsoData, build_phi, verify_iso_data
from ttba.shear import Shear, cocycle_space, inner_shears, lambda_map, transport
from ttba.triangular import TriAlgebra, Twist, build_triangular

__version__ = "0.1.0"

__all__ = [
    "Automorphism", "Bimodule", "FDAlgebra", "IsoData", "RatMatrix", "Rational",
    "Shear", "TriAlgebra", "Twist", "bidimension", "build_phi",
    "build_triangular", "cd_formula_check", "check_algebra",
    "check_automorphism", "check_bimodule", "cocycle_space", "dual_bimodule",
    "hochschild_dim", "inner_shears", "kernel_backend", "kernel_basis",
    "lambda_map", "rank", "solve", "transport", "twisted_dual",
    "verify_iso_data",
]
