"""Build script: compiles the bitset scan kernels when Cython is available.

The package works without the extension (a numpy/int fallback is selected at
import time), so any failure here degrades to a pure-Python install.  Set
POLARSWITCH_NO_EXT=1 to skip the extension build entirely.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("POLARSWITCH_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "polarswitch._ckernels",
                    ["src/polarswitch/_ckernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
