"""Build script for the optional compiled pairwise-kernel core.

The extension is marked optional: if no C toolchain (or Cython) is
available the install proceeds and optsample falls back to the pure
numpy implementation at import time.

Build in place for development:

    python setup.py build_ext --inplace
"""

from setuptools import Extension, setup

try:
    import numpy as np
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "optsample._pairwise_cy",
                sources=["src/optsample/_pairwise_cy.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "initializedcheck": False,
        },
    )

setup(ext_modules=ext_modules)
