"""Build script: compiles the optional elimination kernel when Cython and a
C compiler are available, otherwise installs the pure-Python fallback only."""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("ttba._kernels_cy", ["src/ttba/_kernels_cy.pyx"])],
        language_level=3,
    )
except ImportError:
    warnings.warn("Cython not available; skipping the compiled kernel")


class OptionalBuildExt(build_ext):
    """Never fail the install over the accelerator; the package falls back
    to the pure-Python kernel at import time."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            warnings.warn(f"compiled kernel skipped: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"compiled kernel skipped: {exc}")


setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
