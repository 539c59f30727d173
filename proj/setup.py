"""Builds the _robustpricing extension straight from the C++ sources.

The CMake build produces the same module for the test tree; this path exists
so `pip install .` works without CMake orchestration.
"""

from glob import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "robustpricing._robustpricing",
    sorted(glob("src/*.cpp")) + ["src/python/module.cpp"],
    include_dirs=["include", "vendor"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
