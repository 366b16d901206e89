import os

from setuptools import setup

ext_modules = []
if not os.environ.get("QUADALG_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("quadalg.linalg._elim_c", ["src/quadalg/linalg/_elim_c.pyx"],
                       extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
