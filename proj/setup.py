"""Builds the pybind11 extension by driving the project's CMake configuration.

The CMake build owns all compiler flags (including the floating-point
contraction settings the deterministic tests rely on), so the extension is
compiled by CMake and only staged into place here.
"""

import os
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name: str) -> None:
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext: CMakeExtension) -> None:
        source_dir = Path(__file__).resolve().parent
        ext_path = Path(self.get_ext_fullpath(ext.name)).resolve()
        package_dir = ext_path.parent  # .../bsdelab/
        package_dir.mkdir(parents=True, exist_ok=True)
        build_dir = Path(self.build_temp).resolve() / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)

        configure = [
            "cmake",
            "-S",
            str(source_dir),
            "-B",
            str(build_dir),
            "-DCMAKE_BUILD_TYPE=Release",
            f"-DPython3_EXECUTABLE={sys.executable}",
            "-DBSDELAB_BUILD_TESTS=OFF",
            "-DBSDELAB_BUILD_CLI=OFF",
            f"-DBSDELAB_INSTALL_PYTHON_DIR={package_dir}",
        ]
        subprocess.run(configure, check=True)
        build = ["cmake", "--build", str(build_dir), "--target", "_core"]
        jobs = os.environ.get("CMAKE_BUILD_PARALLEL_LEVEL")
        if jobs:
            build += ["-j", jobs]
        subprocess.run(build, check=True)
        subprocess.run(["cmake", "--install", str(build_dir)], check=True)


setup(
    packages=["bsdelab"],
    package_dir={"": "python"},
    ext_modules=[CMakeExtension("bsdelab._core")],
    cmdclass={"build_ext": CMakeBuild},
    zip_safe=False,
)
