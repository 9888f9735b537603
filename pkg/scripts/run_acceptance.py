#!/usr/bin/env python3
"""Run the acceptance criteria and print one verdict line per criterion.

Exit status is pytest's: 0 only if every criterion passes.
"""

import pathlib
import sys

import pytest

ROOT = pathlib.Path(__file__).resolve().parent.parent

if __name__ == "__main__":
    sys.exit(pytest.main([str(ROOT / "tests" / "test_acceptance.py"), "-q", "-p", "no:cacheprovider", *sys.argv[1:]]))
