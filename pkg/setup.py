"""Build the optional compiled game kernel; the package works without it."""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("GNNLOGIC_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("gnnlogic.games._minimax_c", ["src/gnnlogic/games/_minimax_c.pyx"])],
            compiler_directives={"language_level": 3, "boundscheck": False, "wraparound": False},
        )

setup(ext_modules=ext_modules)
