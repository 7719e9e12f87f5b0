"""Build script: compiles the optional integration kernel.

The package is fully functional without the extension (a pure-Python
fallback is selected at import time); the compiled kernel is what makes
basin grids fast.  Build failures are therefore non-fatal.
"""

from setuptools import Extension, setup

extensions = []
try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "assimdyn._integrate_c",
                ["src/assimdyn/_integrate_c.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "initializedcheck": False,
        },
    )
except ImportError:
    pass

setup(ext_modules=extensions)
