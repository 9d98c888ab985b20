"""Rank, expected rank and defect statistics over a random valuation corpus."""

import argparse
import time
from collections import Counter

from tacnodal.corpus import corpus
from tacnodal.tropical import dual_subdivision, subdivision_census, tropical_curve, verify_duality


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("-n", type=int, default=500)
    ap.add_argument("--max-points", type=int, default=12)
    args = ap.parse_args()
    t = time.perf_counter()
    stats = Counter()
    defects = Counter()
    for F in corpus(args.seed, args.n, args.max_points):
        S = dual_subdivision(F)
        c = subdivision_census(S)
        stats["TP"] += c.is_tp
        stats["rk >= rkexp"] += c.rk >= c.rkexp
        stats["TP => rk = rkexp"] += (not c.is_tp) or c.rk == c.rkexp
        stats["2d <= script N"] += c.is_tp or 2 * c.d <= c.script_n
        stats["duality"] += verify_duality(tropical_curve(F), S).passed
        defects[c.d] += 1
    print(f"{args.n} instances, seed {args.seed}, {time.perf_counter() - t:.1f}s")
    for k, v in stats.items():
        print(f"  {k:<18} {v}/{args.n}")
    print(f"  defect histogram   {dict(sorted(defects.items()))}")


if __name__ == "__main__":
    main()
