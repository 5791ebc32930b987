"""Build script for the optional compiled GF(2) elimination core.

The extension is marked optional: if the C toolchain or Cython is
unavailable the install still succeeds and the package falls back to the
pure-Python engine at import time (see ratslice.gf2).
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "ratslice._gf2core",
                ["src/ratslice/_gf2core.pyx"],
                optional=True,
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
