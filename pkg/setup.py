"""Build hook: compiles the optional search kernel when Cython and a C
compiler are available, otherwise installs the pure-Python fallback only."""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "rdu.search._kernel_cy",
                ["src/rdu/search/_kernel_cy.pyx"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - depends on build host
    print(f"rdu: compiled kernel skipped ({exc}); pure-Python kernel will be used")

setup(ext_modules=ext_modules)
