import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the native kernels when a toolchain is available.

    The package falls back to the numpy kernels at import time, so a failed
    extension build must not fail the install.
    """

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            self._skip(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            self._skip(exc)

    @staticmethod
    def _skip(exc):
        print(f"warning: native kernel build skipped ({exc}); using pure kernels")


ext_modules = []
if not os.environ.get("THREESUM_SKIP_NATIVE"):
    try:
        import numpy
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "threesum._kernels._native",
                    ["src/threesum/_kernels/_native.pyx"],
                    include_dirs=[numpy.get_include()],
                    language="c++",
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            language_level=3,
        )
    except ImportError as exc:
        print(f"warning: Cython/numpy unavailable ({exc}); native kernels skipped")

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
