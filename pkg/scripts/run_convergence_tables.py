#!/usr/bin/env python3
"""Reproduce the convergence tables: limited second order in L2 and the
unlimited fourth order scheme in L1/L2/Linf, both at 128 -> 256."""

import sys

from mpfv.cli import main

if __name__ == "__main__":
    rc = main(
        ["convergence", "--scheme", "fv2", "--limiters", "bj,n2n,kuz,nk",
         "--norms", "l2", *sys.argv[1:]]
    )
    rc |= main(
        ["convergence", "--scheme", "fv4", "--limiters", "unlimited",
         "--norms", "l1,l2,linf", *sys.argv[1:]]
    )
    sys.exit(rc)
