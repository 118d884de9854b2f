"""Build script for the Cython kernel extension.

The package works without the extension (a pure-NumPy fallback is selected
at import time); building it speeds up per-codeword successive-cancellation
decoding considerably.  Build in place with:

    python setup.py build_ext --inplace
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = [
    Extension(
        "anpolar._kernels",
        ["src/anpolar/_kernels.pyx"],
        extra_compile_args=["-O3"],
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )
    if cythonize is not None
    else [],
)
