from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # the pure-Python kernels take over at import time
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("bsva._ckernels", ["src/bsva/_ckernels.pyx"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
