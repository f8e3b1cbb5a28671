"""Builds the optional Cython reduction kernel.

If Cython or a C compiler is unavailable the package still installs and the
pure-Python kernel is used at import time.
"""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("LAMBDAMU_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "lambdamu.kernel._ckernel",
                    ["src/lambdamu/kernel/_ckernel.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
