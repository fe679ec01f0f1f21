"""Build hook for the optional compiled kernel.

The package works without the extension (a pure-Python kernel is selected at
import time), so a failed compile only costs speed.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/regames/_ops_cy.pyx"],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover
    sys.stderr.write(f"warning: compiled kernel skipped ({exc}); "
                     "falling back to the pure-Python kernel\n")

setup(ext_modules=ext_modules)
