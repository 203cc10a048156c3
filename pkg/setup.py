"""Build the optional compiled coset-enumeration kernel.

When Cython or a C compiler is missing the package still installs and the
pure-Python kernel is used.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("lefschetz.fpgroups._coset", ["src/lefschetz/fpgroups/_coset.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
