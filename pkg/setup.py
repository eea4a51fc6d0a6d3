"""Build script for the optional compiled iteration kernel.

The extension links against libmpfr/libgmp. It is marked optional: if the
toolchain or headers are missing the install still succeeds and the package
falls back to the pure-Python kernel (see abelkit.backend).
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "abelkit._itercore",
                ["src/abelkit/_itercore.pyx"],
                libraries=["mpfr", "gmp"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
