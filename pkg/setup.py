"""Build script: compiles the optional native kernel extension.

The package is fully functional without the extension; if Cython or a C
compiler is unavailable the build falls back to the pure numpy backend.
"""

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the extension if possible, continue without it otherwise."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, etc.
            print(f"native kernel build skipped: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"native kernel build skipped ({ext.name}): {exc}")


def extensions():
    try:
        from Cython.Build import cythonize
        import numpy
    except ImportError as exc:
        print(f"native kernel build skipped: {exc}")
        return []
    from setuptools import Extension

    ext = Extension(
        "rpenergy._kernels._native",
        sources=["src/rpenergy/_kernels/_native.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize([ext], language_level=3)


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
