"""Build script: compiles the optional Cython kernel when possible.

The package is fully functional without the extension; the pure-Python
kernel in mixedsym._kernel._pure is selected automatically at import
time if the extension is missing (or when MIXEDSYM_PURE=1 is set).
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("mixedsym._kernel._speedups",
                   ["src/mixedsym/_kernel/_speedups.pyx"])],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
