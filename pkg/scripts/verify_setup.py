#!/usr/bin/env python3
"""
Environment setup verification script for Cyclic Cherednik
"""
import sys
from pathlib import Path

from dotenv import load_dotenv

# Load .env from project root
root_dir = Path(__file__).parent.parent
load_dotenv(root_dir / ".env")


def check_imports():
    """Check computational dependencies"""
    try:
        import pydantic
        import sympy

        print(f"✓ pydantic {pydantic.VERSION}, sympy {sympy.__version__} available")
        return True
    except Exception as e:
        print(f"✗ Dependency import failed: {e}")
        return False


def check_settings():
    """Check CHK_ settings"""
    try:
        from cherednik_cli.config import CliSettings

        settings = CliSettings()
        print(f"✓ Settings loaded (threads={settings.threads}, window={settings.default_window})")
        return True
    except Exception as e:
        print(f"✗ Settings check failed: {e}")
        return False


def check_identity():
    """Check one identity end to end"""
    try:
        from cherednik_core import StabParam, theta_order

        order = theta_order(StabParam.of(-2, 1, 1))
        assert order.describe() == "0>2>1", order.describe()
        print("✓ Stability order of (-2, 1, 1) is 0>2>1")
        return True
    except Exception as e:
        print(f"✗ Identity check failed: {e}")
        return False


def main():
    print("Checking Cyclic Cherednik environment...\n")

    imports_ok = check_imports()
    settings_ok = check_settings()
    identity_ok = check_identity()

    print()
    if imports_ok and settings_ok and identity_ok:
        print("✓ All checks passed! Environment is ready.")
        return 0
    else:
        print("✗ Some checks failed. Please fix the issues above.")
        return 1


if __name__ == "__main__":
    sys.exit(main())
