import numpy as np
from setuptools import setup

# The compiled kernels are optional: the package falls back to the numpy
# implementations in layoutfuse._kernels when the extension is missing.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/layoutfuse/_kernels/_core.pyx",
        language_level=3,
    )
except ImportError:
    ext_modules = []

for ext in ext_modules:
    ext.optional = True

setup(
    ext_modules=ext_modules,
    include_dirs=[np.get_include()],
)
