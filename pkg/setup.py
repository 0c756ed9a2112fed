"""Build script: compiles the word-reduction kernel when Cython is around.

The package is pure Python plus one optional extension.  Without Cython (or
if compilation fails) the install still succeeds and ``invhull.rewrite``
selects the pure-Python kernel at import time; ``rewrite.KERNEL`` reports
which one is active.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("invhull._kernel", ["src/invhull/_kernel.pyx"])],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
