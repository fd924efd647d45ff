from setuptools import Extension, setup
from Cython.Build import cythonize

# fp-contract off keeps the compiled kernels bit-identical to the
# pure-Python fallback (the double-double transforms rely on strict
# IEEE rounding of each individual operation).
extensions = [
    Extension(
        "koff2d._kernels",
        sources=["src/koff2d/_kernels.pyx"],
        extra_compile_args=["-O2", "-ffp-contract=off"],
    )
]

setup(ext_modules=cythonize(extensions, language_level=3))
