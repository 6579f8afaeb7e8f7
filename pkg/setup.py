"""Build script: compiles the optional accelerator extension.

The package works without the extension (a NumPy fallback is selected at
import time); set DRIFTKIT_NO_EXT=1 to skip compilation entirely.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the extension if possible, otherwise continue without it."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: skipping accelerator extension build: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: failed to build {ext.name}: {exc}")


ext_modules = []
cmdclass = {}
if not os.environ.get("DRIFTKIT_NO_EXT"):
    try:
        import numpy
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "driftkit._ext._kernels",
                    ["src/driftkit/_ext/_kernels.pyx"],
                    include_dirs=[numpy.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
        cmdclass = {"build_ext": OptionalBuildExt}
    except ImportError as exc:
        print(f"warning: Cython/NumPy unavailable, building pure-Python only: {exc}")

setup(ext_modules=ext_modules, cmdclass=cmdclass)
