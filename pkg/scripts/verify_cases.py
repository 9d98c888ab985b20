"""Replay every exact computation (tacnode witnesses, negatives, edge catalog)."""

import argparse
import json
import time

from tacnodal.algebra.cases import CASES, verify_case
from tacnodal.refine import EDGE_CATALOG, edge_1tacnodal_check


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--json", action="store_true", help="dump full reports")
    args = ap.parse_args()
    results = []
    for cid in CASES:
        t = time.perf_counter()
        r = verify_case(cid)
        results.append((cid, r, time.perf_counter() - t))
    for pid in EDGE_CATALOG:
        t = time.perf_counter()
        r = edge_1tacnodal_check(pid)
        results.append((f"EDGE_{pid}", r, time.perf_counter() - t))
    if args.json:
        print(json.dumps({cid: r.to_json() for cid, r, _ in results}, indent=2))
        return
    for cid, r, dt in results:
        print(f"{cid:<10} {'pass' if r.passed else 'FAIL':<5} {r.verdict:<16} {dt:5.2f}s")
    print(f"{sum(r.passed for _, r, _ in results)}/{len(results)} passed")


if __name__ == "__main__":
    main()
