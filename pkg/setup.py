"""Build script for the optional compiled simplex kernel.

The package works without the extension (a pure numpy fallback is selected
at import time), so a failed Cython build is downgraded to a warning.
"""

import warnings

from setuptools import setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "lipfree._simplex_cy",
                ["src/lipfree/_simplex_cy.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    warnings.warn(f"building without compiled simplex kernel: {exc}")

setup(ext_modules=ext_modules)
