"""Build script for the optional compiled sift kernels.

The package is fully functional without the extension (a numpy/scipy fallback
is selected at import time); the extension just makes envelope sifting fast.
"""

import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover - source tree without Cython
    cythonize = None

if cythonize is not None:
    extensions = cythonize(
        [
            Extension(
                "hhtscale._kernels._sift",
                ["src/hhtscale/_kernels/_sift.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
else:
    extensions = []

setup(ext_modules=extensions)
