# Builds the optional Cython kernel extension. If compilation is impossible
# the package still installs and falls back to the numpy kernels at import.
import numpy
from setuptools import setup, Extension

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "acceptance_engine._kernels_cy",
                ["src/acceptance_engine/_kernels_cy.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
