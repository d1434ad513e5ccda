"""Builds the pvwatch extension by driving the project's CMake build."""

import os
import subprocess
import sys
from pathlib import Path

from setuptools import setup
from setuptools.command.build_ext import build_ext
from setuptools.extension import Extension


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source_dir = Path(__file__).resolve().parent
        ext_path = Path(self.get_ext_fullpath(ext.name)).resolve()
        package_dir = ext_path.parent
        package_dir.mkdir(parents=True, exist_ok=True)
        build_dir = Path(self.build_temp).resolve() / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)

        cmake_args = [
            f"-DCMAKE_BUILD_TYPE={os.environ.get('PVWATCH_BUILD_TYPE', 'Release')}",
            "-DPVWATCH_BUILD_TESTS=OFF",
            f"-DPython3_EXECUTABLE={sys.executable}",
        ]
        subprocess.run(
            ["cmake", "-S", str(source_dir), "-B", str(build_dir), *cmake_args],
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "pvwatch_pymod", "-j"],
            check=True,
        )

        built = build_dir / "python" / "pvwatch" / ext_path.name
        self.copy_file(str(built), str(ext_path))


setup(
    packages=["pvwatch"],
    package_dir={"": "python"},
    ext_modules=[CMakeExtension("pvwatch._core")],
    cmdclass={"build_ext": CMakeBuild},
)
