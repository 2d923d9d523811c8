#!/usr/bin/env python3
"""Run the full benchmark suite and write its artifacts to out/."""

import sys

from mpfv.cli import main

if __name__ == "__main__":
    sys.exit(main(["suite", *sys.argv[1:]]))
