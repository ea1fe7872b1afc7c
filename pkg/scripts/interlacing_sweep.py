"""Probe whether the positive and negative halves of each signed triangle interlace.

Also reports the two summands of the even-step type A recurrence.

Usage: python3 scripts/interlacing_sweep.py [--n-max 20] [--csv out.csv]
"""

import argparse
import csv
import sys

from signed_eulerian.roots import interlacing_sweep, operator_pair_sweep


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=20)
    ap.add_argument("--csv", help="write group,n,verdict rows here as well")
    args = ap.parse_args(argv)

    rows = []
    for group in ("A", "B"):
        sweep = interlacing_sweep(group, args.n_max)
        for n, verdict in sorted(sweep.results.items()):
            rows.append((group, n, verdict))
        print(f"{group}: first not_interlacing n = {sweep.first_failure}")
    for probe in operator_pair_sweep(args.n_max // 2):
        print(f"T_s T A_{2 * probe.m}^{probe.sign} vs T_t T: {probe.left_verdict}/"
              f"{probe.right_verdict} {probe.interlacing}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["group", "n", "verdict"])
            w.writerows(rows)
    else:
        csv.writer(sys.stdout).writerows(rows)


if __name__ == "__main__":
    main()
