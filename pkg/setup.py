"""Build script: compiles the optional DP kernel extension.

Set WCATALAN_NO_EXT=1 to skip the extension entirely; the package then
runs on the pure-Python kernel.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("WCATALAN_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/wcatalan/_dyck_cy.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
