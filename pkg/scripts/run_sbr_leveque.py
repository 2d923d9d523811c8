#!/usr/bin/env python3
"""Rotate the slotted-body initial condition once at 100^2 with each
second-order limiter and print the error/extrema table rows."""

import sys

from mpfv.cli import main

if __name__ == "__main__":
    rc = 0
    for limiter in ("n2n", "bj", "kuz"):
        rc |= main(
            ["run", "--scheme", "fv2", "--limiter", limiter, "--case", "sbr",
             "--res", "100", "--cn", "0.5", *sys.argv[1:]]
        )
    sys.exit(rc)
