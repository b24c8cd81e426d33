import os

import numpy as np
from setuptools import Extension, setup

# Set RAINBOWGRAPH_NO_EXT=1 to install without the compiled kernels.
ext_modules = []
if not os.environ.get("RAINBOWGRAPH_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "rainbowgraph._kernels._ckernels",
                    ["src/rainbowgraph/_kernels/_ckernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
