"""Build script: compiles the optional Cython kernels.

The package works without the extension (a numpy fallback is selected at
import), so a failed compile downgrades to a warning instead of aborting the
install.
"""
import warnings

from setuptools import setup

try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    extensions = cythonize(
        [
            Extension(
                "lytensor._kernels._cykernels",
                ["src/lytensor/_kernels/_cykernels.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    warnings.warn(f"Cython kernels not built ({exc}); using numpy fallback")
    extensions = []

setup(ext_modules=extensions)
