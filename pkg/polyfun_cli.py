#!/usr/bin/env python3
"""
polyfunlab command-line entry point

Usage: python polyfun_cli.py psi 90
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent / "src"))

from polyfunlab.cli import main  # noqa: E402

if __name__ == "__main__":
    exit(main())
