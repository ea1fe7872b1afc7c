"""Exact and simulated probability that a shuffled deck is an even permutation.

Prints one line per (variant, n, a, k) with the exact value, the Monte Carlo
estimate and its z-score.

Usage: python3 scripts/sign_after_shuffle.py [--trials 200000] [--seed 1]
"""

import argparse

from signed_eulerian.shuffles import ShuffleSpec, simulate

CASES = [("gsr", 3, 2, 1), ("gsr", 6, 2, 1), ("gsr", 6, 2, 2), ("gsr", 10, 4, 1),
         ("gsr", 52, 2, 1), ("gsr", 52, 2, 7), ("type_b", 2, 3, 1), ("type_b", 4, 3, 1),
         ("type_b", 10, 3, 2)]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=200_000)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args(argv)

    print(f"{'variant':7} {'n':>3} {'a':>2} {'k':>2} {'exact':>12} {'simulated':>10} {'z':>6}")
    for variant, n, a, k in CASES:
        r = simulate(ShuffleSpec(variant, n, a, k), args.trials, args.seed, args.workers)
        print(f"{variant:7} {n:3d} {a:2d} {k:2d} {float(r.exact_probability):12.9f} "
              f"{r.positive_fraction:10.6f} {r.z_score:6.2f}")


if __name__ == "__main__":
    main()
