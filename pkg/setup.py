import os

from setuptools import Extension, setup

# The compiled kernels are optional: when Cython (or a C toolchain) is not
# available the package installs pure-Python and huygens._backend falls back
# to the numpy kernels at import time.
ext_modules = []
if os.environ.get("HUYGENS_SKIP_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("huygens._kernels", ["src/huygens/_kernels.pyx"])],
            language_level=3,
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
