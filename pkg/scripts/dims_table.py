#!/usr/bin/env python3
"""Print the left-cell dimension tables for all ten diagram families,
optionally cross-checking every closed form against explicit
half-diagram enumeration.

Usage: python scripts/dims_table.py [--nmax 4] [--K 1 2] [--check]
"""
import argparse
import sys

from moebius import Family, dim_left_cell
from moebius.families import admissible_lambdas


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--nmax", type=int, default=4)
    parser.add_argument("--K", type=int, nargs="+", default=[1, 2])
    parser.add_argument("--check", action="store_true",
                        help="verify each entry by enumeration")
    args = parser.parse_args(argv)
    for family in Family:
        print(f"== {family.value}")
        for K in args.K:
            for n in range(0, args.nmax + 1):
                cells = ", ".join(
                    f"lam={lam}: {dim_left_cell(family, n, lam, K, check=args.check)}"
                    for lam in admissible_lambdas(family, n)
                )
                print(f"  K={K} n={n}: {cells}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
