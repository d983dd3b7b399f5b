import os

from setuptools import setup

ext_modules = []
if not os.environ.get("SKEWTORSION_PURE"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/skewtorsion/_core/_kernels_c.pyx"], language_level=3
        )
    except ImportError:
        # No Cython available: the pure-Python kernels are used instead.
        ext_modules = []

setup(ext_modules=ext_modules)
