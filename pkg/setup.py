"""Build script for the optional compiled sampling kernel.

The package works without the extension (a numpy fallback is selected at
import time), so a failed compile only emits a warning.
"""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the Cython kernel if possible, warn and continue otherwise."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # toolchain missing, etc.
            warnings.warn(f"compiled sampler not built ({exc}); "
                          "falling back to the pure numpy backend")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"compiled sampler not built ({exc}); "
                          "falling back to the pure numpy backend")


try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "blockcirc._sampler",
                ["src/blockcirc/_sampler.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions, cmdclass={"build_ext": OptionalBuildExt})
