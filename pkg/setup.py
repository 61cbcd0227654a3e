from setuptools import setup

# The compiled kernel is optional: if Cython (or a C compiler) is missing the
# package falls back to the pure-Python kernel at import time.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/versalkit/_speedups.pyx"],
        compiler_directives={"language_level": "3"},
    )
    for ext in ext_modules:
        ext.optional = True
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
