from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
    ext_modules = cythonize(
        [Extension("ackirby._kernel_c", ["src/ackirby/_kernel_c.pyx"],
                   extra_compile_args=["-O2"])],
        language_level=3,
    )
except ImportError:
    # Without Cython the package still works on the pure-Python kernel.
    ext_modules = []

setup(ext_modules=ext_modules)
