import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("HKTLAB_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("hktlab._kernels._poly_cy", ["src/hktlab/_kernels/_poly_cy.pyx"])],
            compiler_directives={"language_level": 3},
        )
    except ImportError:
        # Pure-Python kernel is selected at import time when the
        # compiled module is unavailable.
        ext_modules = []

setup(ext_modules=ext_modules)
