"""Build script: compiles the optional stepping kernel.

Set SL2FLOW_NO_EXT=1 to skip the extension; the package then falls back to
the pure-Python kernel at import time.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("SL2FLOW_NO_EXT", "0") not in ("1", "true", "yes"):
    try:
        from Cython.Build import cythonize

        # Keep the compiled kernel bit-identical to the pure-Python one:
        # no FMA contraction of a*b + c, and no fusing of paired sin/cos
        # calls into glibc's sincos (whose cosine can differ by 1 ulp from
        # a separate cos call).
        ext_modules = cythonize(
            [
                Extension(
                    "sl2flow._stepper",
                    ["src/sl2flow/_stepper.pyx"],
                    extra_compile_args=[
                        "-ffp-contract=off",
                        "-fno-builtin-sin",
                        "-fno-builtin-cos",
                    ],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
