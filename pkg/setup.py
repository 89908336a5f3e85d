"""Build script for the compiled kernel extension.

The package works without the extension (the numpy fallback is selected at
import time), so a failed compile only costs speed. Build errors are therefore
not masked here: if Cython or a C compiler is genuinely unavailable, install
with CLONECERT_SKIP_EXT=1.
"""
import os

from setuptools import Extension, setup

if os.environ.get("CLONECERT_SKIP_EXT"):
    ext_modules = []
else:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "clonecert._kernels._core",
                sources=["src/clonecert/_kernels/_core.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
