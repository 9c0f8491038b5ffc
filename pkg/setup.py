"""Build script: compiles the optional search kernel.

The package works without the extension (a pure-Python twin is selected at
import time), so a failed compile only costs speed.  Set DTREEPACK_PURE=1 to
skip the extension build entirely.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("DTREEPACK_PURE"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/dtreepack/_fastcore.pyx"],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except Exception as exc:  # no Cython / no compiler: fall back to pure
        print(f"skipping compiled kernel ({exc}); pure-Python backend will be used")

setup(ext_modules=ext_modules)
