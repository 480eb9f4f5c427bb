"""Build script: compiles the optional elimination kernel.

The package is pure Python plus one optional Cython module
(torext._snfcore).  If Cython or a C compiler is unavailable the build
falls through and the package uses the pure-Python twin selected at
import time, so a failed extension build is never fatal.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """build_ext that downgrades compile failures to a warning."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, etc.
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        import warnings

        warnings.warn(
            "torext: compiled kernel build failed (%s); "
            "falling back to the pure-Python backend" % (exc,)
        )


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [Extension("torext._snfcore", ["src/torext/_snfcore.pyx"])],
        language_level=3,
    )


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
