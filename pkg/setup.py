"""Build script: compiles the optional speedup kernels.

The package is fully functional without the extension (a pure-Python
implementation of the same kernels is selected at import time), so a
failed compile only costs speed.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/algconn/_kernels/_speedups.pyx"],
        language_level="3",
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    import sys

    print(f"speedup kernels not built ({exc}); using pure-Python fallback", file=sys.stderr)
    ext_modules = []

setup(ext_modules=ext_modules)
