#!/usr/bin/env python3
"""
VariPro Setup Script

Creates a virtual environment in the project folder, installs the
dependencies, runs the test suite and then one demonstration experiment.

Usage:
    python setup.py                  # denoise demo
    python setup.py configs/ct_sparse.json ct
"""

import sys
import subprocess
import platform
from pathlib import Path

DEFAULT_DEMO = ("configs/denoise_rectangles.json", "denoise")


class VariProSetup:
    """Environment setup and demo runner for VariPro"""

    def __init__(self, demo_config=DEFAULT_DEMO[0], demo_command=DEFAULT_DEMO[1]):
        self.project_root = Path(__file__).parent
        self.venv_path = self.project_root / "varipro_venv"
        self.requirements_file = self.project_root / "requirements.txt"
        self.main_script = self.project_root / "main.py"
        self.demo_config = self.project_root / demo_config
        self.demo_command = demo_command
        self.out_dir = self.project_root / "VariPro_Reports" / demo_command

        self.is_windows = platform.system() == "Windows"
        bin_dir = self.venv_path / ("Scripts" if self.is_windows else "bin")
        self.venv_python = bin_dir / ("python.exe" if self.is_windows else "python")

    def print_header(self):
        print("=" * 80)
        print("🔬 VariPro - Automated Setup & Demo")
        print("=" * 80)
        print(f"📁 Project Directory: {self.project_root}")
        print(f"💻 Platform: {platform.system()}")
        print("=" * 80)

    def check_python_version(self):
        print("🔍 Checking Python version...")
        if sys.version_info < (3, 9):
            print(f"❌ ERROR: Python 3.9 or higher is required (found {sys.version.split()[0]})")
            sys.exit(1)
        print(f"✅ Python version OK: {sys.version.split()[0]}")

    def check_required_files(self):
        print("🔍 Checking required files...")
        required_files = [self.requirements_file, self.main_script, self.demo_config,
                          self.project_root / "core" / "__init__.py"]
        missing = [str(p) for p in required_files if not p.exists()]
        if missing:
            print("❌ ERROR: Missing required files:")
            for file in missing:
                print(f"   - {file}")
            sys.exit(1)
        print("✅ All required files found")

    def _run(self, description, command):
        try:
            subprocess.run(command, check=True, capture_output=True, text=True, cwd=str(self.project_root))
            return True
        except subprocess.CalledProcessError as e:
            print(f"❌ ERROR: {description} failed")
            print(f"   Command: {' '.join(map(str, e.cmd))}")
            print(f"   Error: {e.stderr.strip()[-2000:]}")
            return False

    def create_virtual_environment(self):
        if self.venv_path.exists():
            print(f"📦 Using existing virtual environment {self.venv_path}")
            return True
        print(f"📦 Creating virtual environment: {self.venv_path.name}")
        return self._run("virtual environment creation", [sys.executable, "-m", "venv", str(self.venv_path)])

    def install_dependencies(self):
        print("📦 Installing dependencies...")
        if not self._run("pip upgrade", [str(self.venv_python), "-m", "pip", "install", "--upgrade", "pip"]):
            return False
        if not self._run("dependency installation",
                         [str(self.venv_python), "-m", "pip", "install", "-r", str(self.requirements_file)]):
            return False
        print("✅ Dependencies installed successfully")
        return True

    def run_tests(self):
        print("🧪 Running test suite...")
        result = subprocess.run([str(self.venv_python), "-m", "pytest", "-q"], cwd=str(self.project_root))
        if result.returncode != 0:
            print(f"❌ Test suite failed with exit code {result.returncode}")
            return False
        print("✅ Test suite passed")
        return True

    def run_demo(self):
        print(f"🚀 Running {self.demo_command} with {self.demo_config.name}...")
        print("=" * 60)
        result = subprocess.run([str(self.venv_python), str(self.main_script), "run", self.demo_command,
                                 "--config", str(self.demo_config), "--out", str(self.out_dir)],
                                cwd=str(self.project_root))
        print("=" * 60)
        if result.returncode == 2:
            print("⚠️  Demo finished but the solver stopped at max_iters")
        elif result.returncode != 0:
            print(f"❌ Demo failed with exit code: {result.returncode}")
            return False
        print(f"📁 Results in {self.out_dir}")
        summary = self.out_dir / "summary.txt"
        if summary.exists():
            print(summary.read_text(encoding="utf-8"))
        return True

    def run_setup(self):
        try:
            self.print_header()
            self.check_python_version()
            self.check_required_files()
            return (self.create_virtual_environment() and self.install_dependencies()
                    and self.run_tests() and self.run_demo())
        except KeyboardInterrupt:
            print("\n\n⚠️  Setup interrupted by user")
            return False


def main():
    args = sys.argv[1:]
    setup = VariProSetup(*args[:2]) if args else VariProSetup()
    if setup.run_setup():
        print("\n🎉 VariPro setup and demo completed successfully!")
        sys.exit(0)
    print("\n💥 VariPro setup failed!")
    sys.exit(1)


def _invoked_by_setuptools():
    # pip/setuptools execute this file with build commands (egg_info,
    # dist_info, bdist_wheel, editable_wheel, ...); package metadata lives
    # in pyproject.toml.
    return len(sys.argv) > 1 and not sys.argv[1].endswith(".json") and not Path(sys.argv[1]).exists()


if __name__ == "__main__":
    if _invoked_by_setuptools():
        from setuptools import setup
        setup()
    else:
        main()
