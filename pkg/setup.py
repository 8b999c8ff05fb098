import os

from setuptools import Extension, setup

# The compiled spectrum kernels are optional: the package falls back to the
# numpy implementation when the extension is unavailable.  Set VSARRAY_NO_EXT=1
# to skip compilation entirely.
ext_modules = []
if os.environ.get("VSARRAY_NO_EXT") != "1":
    try:
        import numpy
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "vsarray._kernels",
                    ["src/vsarray/_kernels.pyx"],
                    extra_compile_args=["-O3"],
                    include_dirs=[numpy.get_include()],
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
