import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "slotswapper._kernels.swap_cy",
                ["src/slotswapper/_kernels/swap_cy.pyx"],
                include_dirs=[np.get_include()],
            )
        ],
        language_level=3,
    )
except ImportError:
    # Pure-Python kernel is a full fallback; the extension is an optimization.
    ext_modules = []

setup(ext_modules=ext_modules)
