from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "_asbec",
    sources=[
        "python/module.cpp",
        "src/objectives.cpp",
        "src/technologies.cpp",
        "src/colony.cpp",
        "src/parallel.cpp",
        "src/metrics.cpp",
        "src/bench.cpp",
        "src/cli.cpp",
    ],
    include_dirs=["include", "vendor"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
