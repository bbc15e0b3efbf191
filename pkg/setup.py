"""Build hook for the optional compiled kernels.

Without Cython (or a C compiler) the package installs as pure Python and
``heckext.kernels`` falls back to ``heckext._pykernels``.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension
except ImportError:
    pass
else:
    ext_modules = cythonize(
        [Extension("heckext._kernels", ["src/heckext/_kernels.pyx"],
                   extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
