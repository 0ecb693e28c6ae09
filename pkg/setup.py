import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("GRUNDYFPT_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        try:
            ext_modules = cythonize(
                [
                    Extension(
                        "grundyfpt._ckernels",
                        ["src/grundyfpt/_ckernels.pyx"],
                        extra_compile_args=["-O3"],
                        optional=True,
                    )
                ],
                compiler_directives={"language_level": "3"},
            )
        except Exception as exc:  # the pure-Python kernels still work
            print(f"warning: skipping compiled kernels ({exc})")

setup(ext_modules=ext_modules)
