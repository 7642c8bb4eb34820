"""Build script: compiles the optional search kernel extension.

Set SOSLAB_NO_EXT=1 to skip the extension entirely; the package then runs
on the pure-Python kernel with identical results.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("SOSLAB_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("soslab._speedups", ["src/soslab/_speedups.pyx"])],
            language_level="3",
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
