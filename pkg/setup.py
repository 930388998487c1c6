"""Build script: compiles the optional Cython kernel for the orbit machinery.

The package works without the extension (a pure-Python fallback is selected
at import time), so a missing compiler or Cython only costs speed.
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
                "parahoric.groups._kernels",
                ["src/parahoric/groups/_kernels.pyx"],
            )
        ],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)
