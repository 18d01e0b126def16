from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; the solver falls back at import
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "fmlkit.solver._kernel",
                ["src/fmlkit/solver/_kernel.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)
