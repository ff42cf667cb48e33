"""Build script: compiles the optional Cython kernel when Cython is available.

The package is fully functional without the extension (a pure-Python
fallback is selected at import time), so the extension is marked optional
and any build failure is non-fatal.
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
                "toricpatch._speedups",
                ["src/toricpatch/_speedups.pyx"],
                optional=True,
            )
        ],
        language_level="3",
    )

setup(ext_modules=ext_modules)
