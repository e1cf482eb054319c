"""Build the optional compiled kernel backend.

The extension is best-effort: if Cython or a C compiler is missing the
install still succeeds and gapscope.kernels falls back to the pure-Python
backend at import time.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing / broken toolchain
            print(f"WARNING: compiled kernels skipped ({exc}); "
                  "pure-Python backend will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"WARNING: building {ext.name} failed ({exc}); "
                  "pure-Python backend will be used")


extensions = [
    Extension(
        "gapscope._kernels_cy",
        ["src/gapscope/_kernels_cy.pyx"],
        # -ffp-contract=off: no FMA contraction, so the compiled kernels
        # are bit-identical to the pure-Python backend (same libm calls,
        # same IEEE operation order).
        extra_compile_args=["-O3", "-ffp-contract=off"],
    )
]

try:
    from Cython.Build import cythonize

    extensions = cythonize(extensions, compiler_directives={"language_level": "3"})
except ImportError:
    print("WARNING: Cython not available; pure-Python backend will be used")
    extensions = []

setup(ext_modules=extensions, cmdclass={"build_ext": optional_build_ext})
