"""Kolmogorov distance between each signed descent law and its normal approximation.

Usage: python3 scripts/normality_table.py [--out table.csv]
"""

import argparse
import sys

from signed_eulerian.clt import normality_csv, normality_diagnostic

SIZES = {"A+": [8, 16, 32, 64, 128], "A-": [8, 16, 32, 64, 128],
         "B+": [6, 12, 24, 48, 96], "B-": [6, 12, 24, 48, 96]}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out")
    args = ap.parse_args(argv)
    rows = [row for family, ns in SIZES.items() for row in normality_diagnostic(family, ns)]
    text = normality_csv(rows)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
