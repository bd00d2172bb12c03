from Cython.Build import cythonize
from setuptools import Extension, setup

setup(
    ext_modules=cythonize(
        [Extension("chaincode._kernel", ["src/chaincode/_kernel.pyx"])],
        compiler_directives={"language_level": "3"},
    )
)
