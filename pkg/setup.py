"""Build script for the optional compiled Gibbs kernels.

The extension links against numpy's static distribution library so the
compiled sweeps draw variates through the exact same C routines as
``numpy.random.Generator``.  If the toolchain is unavailable the package
still installs; the pure-numpy kernels are selected at import.
"""

import os

import numpy
from setuptools import Extension, setup
from Cython.Build import cythonize

npy_lib_dir = os.path.join(numpy.get_include(), "..", "lib")

extensions = [
    Extension(
        "tiltbench.kernels._compiled",
        ["src/tiltbench/kernels/_compiled.pyx"],
        include_dirs=[numpy.get_include()],
        library_dirs=[npy_lib_dir],
        libraries=["npyrandom"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
)
