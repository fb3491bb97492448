import numpy
from setuptools import Extension, setup
from Cython.Build import cythonize

setup(
    ext_modules=cythonize(
        [
            Extension(
                "specinv._kernel._reduce_cy",
                ["src/specinv/_kernel/_reduce_cy.pyx"],
                language="c++",
                extra_compile_args=["-O3"],
                include_dirs=[numpy.get_include()],
            )
        ],
        language_level=3,
    )
)
