"""Build glue for the optional compiled scalar kernel.

The package is pure Python plus one Cython extension, eltlab._kernel,
holding the scalar arithmetic hot path.  The extension is strictly
optional: if Cython or a C compiler is unavailable, or the compile
fails, the install finishes anyway and eltlab.core falls back to the
pure-Python kernel at import time.
"""

from setuptools import setup
from setuptools.command.build_ext import build_ext


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        ["src/eltlab/_kernel.pyx"],
        compiler_directives={"language_level": "3"},
    )


class optional_build_ext(build_ext):
    """build_ext that downgrades compile failures to a warning."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
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
            "eltlab: compiled kernel build failed (%s); "
            "falling back to the pure-Python kernel" % (exc,)
        )


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
