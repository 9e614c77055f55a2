"""Build script for the optional compiled cut-enumeration kernel.

The package is fully functional without the extension (a portable numpy
kernel is selected at import time); the compiled kernel just makes the
brute-force verification loops faster.
"""
from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "dynsparse.cutkernel._ckernel",
                ["src/dynsparse/cutkernel/_ckernel.pyx"],
                include_dirs=[numpy.get_include()],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
