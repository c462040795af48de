#!/usr/bin/env python3
"""Trace the three-mode vs two-mode exponent ratio across signal strengths.

Prints a table of gamma3/gamma2 on a log grid, reports the crossover point,
and optionally writes the rows to CSV for plotting elsewhere.
"""

import argparse
import csv
import math
import sys

import numpy as np

from qillum import compare_exponents, find_crossover


def parse_args(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--start", type=float, default=0.01)
    parser.add_argument("--stop", type=float, default=1.0)
    parser.add_argument("--count", type=int, default=40)
    parser.add_argument("--out", help="optional CSV destination")
    return parser.parse_args(argv)


def main(argv=None) -> int:
    args = parse_args(argv)
    if args.start <= 0 or args.stop <= args.start or args.count < 2:
        print("need 0 < start < stop and count >= 2", file=sys.stderr)
        return 2

    grid = np.logspace(math.log10(args.start), math.log10(args.stop), args.count)
    rows = [compare_exponents(ns) for ns in grid]

    print(f"{'n_s':>12} {'gamma2':>14} {'gamma3':>14} {'ratio':>10}")
    for row in rows:
        marker = " <" if row.ratio < 1.0 else ""
        print(
            f"{row.n_signal:12.6f} {row.gamma2:14.6e} {row.gamma3:14.6e}"
            f" {row.ratio:10.6f}{marker}"
        )

    crossover = find_crossover()
    print(f"\nratio crosses 1 at n_s = {crossover.n_signal:.6f}")

    if args.out:
        with open(args.out, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["n_s", "gamma2", "gamma3", "ratio"])
            for row in rows:
                writer.writerow([row.n_signal, row.gamma2, row.gamma3, row.ratio])
        print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
