"""Selects the elimination kernel at import: compiled if built, else pure.

Set ``TTBA_KERNEL=python`` to force the fallback (used by the benchmark and
the parity tests).
"""

from __future__ import annotations

import os

from ttba import _kernels as _py_kernels

if os.environ.get("TTBA_KERNEL", "").lower() == "python":
    echelon = _py_kernels.echelon
    KERNEL_BACKEND = "python"
else:
    try:
        from ttba import _kernels_cy as _cy_kernels

        echelon = _cy_kernels.echelon
        KERNEL_BACKEND = "cython"
    except ImportError:
        echelon = _py_kernels.echelon
        KERNEL_BACKEND = "python"


def kernel_backend() -> str:
    """Name of the active elimination kernel ('cython' or 'python')."""
    return KERNEL_BACKEND
