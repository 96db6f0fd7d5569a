"""Build the optional compiled kernels; the package works without them."""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize([Extension("arckh._kernels", ["src/arckh/_kernels.pyx"])],
                            compiler_directives={"language_level": "3"})
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
