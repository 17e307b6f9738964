"""Build the optional compiled kernel; the package works without it."""
from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("pliable.algebra._kernel_cy", ["src/pliable/algebra/_kernel_cy.pyx"],
                   extra_compile_args=["-O3"])],
        compiler_directives={"language_level": 3},
        quiet=True,
    )

setup(ext_modules=ext_modules)
