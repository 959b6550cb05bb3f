"""Build hook for the optional compiled kernels.

The package works without a C compiler: if Cython or the toolchain is
missing the extension is skipped and the pure-Python kernels are used.
"""
import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # toolchain missing or compile failure
            self.warn("compiled kernels not built (%s); using pure Python" % exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self.warn("compiled kernels not built (%s); using pure Python" % exc)


def _extensions():
    if os.environ.get("MST_EXTREMES_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    from setuptools import Extension

    ext = Extension(
        "mst_extremes._kernels",
        ["src/mst_extremes/_kernels.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], compiler_directives={"language_level": 3}, quiet=True)


setup(ext_modules=_extensions(), cmdclass={"build_ext": OptionalBuildExt})
