#!/usr/bin/env python3
"""How fast does the compacted size X_n grow?

Samples random recursive trees and BSTs over a doubling size grid, prints
the mean distinct-fringe-shape count X, the ratio X/n, and the normalized
value X ln(n)/n, then fits X against alpha * n / ln n.  The normalized
column being flat is the visual signature of the n/ln n law.
"""

import argparse
import math

from treecompact.experiments import fit_nlogn, run_scaling


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=10)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-power", type=int, default=15,
                        help="largest size is 2**MAX_POWER")
    args = parser.parse_args()

    sizes = [1 << p for p in range(10, args.max_power + 1)]
    for family in ("recursive", "bst"):
        records = run_scaling(family, sizes, args.trials, args.seed)
        print(f"{family} trees, {args.trials} trials per size")
        print(f"  {'n':>8} {'mean X':>10} {'X/n':>8} {'X ln(n)/n':>10}")
        for n in sizes:
            xs = [r[4] for r in records if r[1] == n]
            mean = sum(xs) / len(xs)
            print(f"  {n:>8} {mean:>10.1f} {mean / n:>8.4f} "
                  f"{mean * math.log(n) / n:>10.4f}")
        if len(sizes) >= 5:
            alpha, r2 = fit_nlogn(records)
            print(f"  fit: X ~ {alpha:.4f} * n/ln(n)   (R^2 = {r2:.5f})")
        else:
            print("  (need --max-power >= 14 for the fit)")
        print()


if __name__ == "__main__":
    main()
