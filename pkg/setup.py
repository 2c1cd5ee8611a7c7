"""Build script: compiles the optional fast kernel extension.

The package is pure Python plus one optional Cython extension
(waldq._fastkern).  If the extension cannot be built (no compiler, no
Cython, or WALDQ_NO_EXT=1), the install proceeds and the pure kernels
are used at runtime.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """build_ext that downgrades compilation failures to a warning."""

    def run(self):
        try:
            build_ext.run(self)
        except Exception as exc:  # platform without a toolchain
            print(f"warning: fast kernel build skipped ({exc})")

    def build_extension(self, ext):
        try:
            build_ext.build_extension(self, ext)
        except Exception as exc:
            print(f"warning: fast kernel build skipped ({exc})")


ext_modules = []
if not os.environ.get("WALDQ_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("waldq._fastkern", ["src/waldq/_fastkern.pyx"])],
            language_level=3,
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
