#!/usr/bin/env python3
"""Sweep enriched counts over all merge configurations and report ranks.

For each degree up to --max-degree the script enumerates every merge
configuration (capped by --max-pairs for degree 4), computes the enriched
count, and prints its rank next to the recursion value, flagging any
mismatch.  Exit status is nonzero if a mismatch appears.
"""

import argparse
import sys
import time

from gwfloor.diagrams import enumerate_merge_configs, floor_count, kontsevich_nd


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-degree", type=int, default=3)
    ap.add_argument(
        "--max-pairs",
        type=int,
        default=2,
        help="pair-count cap applied at degree 4 (default 2)",
    )
    args = ap.parse_args()

    bad = 0
    for d in range(1, args.max_degree + 1):
        n = 3 * d - 1
        expect = kontsevich_nd(d)
        cap = args.max_pairs if d >= 4 else n // 2
        print(f"degree {d}: recursion value {expect}")
        for s in range(0, min(cap, n // 2) + 1):
            cfgs = enumerate_merge_configs(n, s)
            t0 = time.perf_counter()
            ranks = {cfg: floor_count(d, cfg).rank for cfg in cfgs}
            dt = time.perf_counter() - t0
            mismatches = {c: r for c, r in ranks.items() if r != expect}
            bad += len(mismatches)
            status = "ok" if not mismatches else f"MISMATCH {mismatches}"
            print(
                f"  s={s}: {len(cfgs)} configurations, {dt:.2f}s, {status}"
            )
    if bad:
        print(f"{bad} rank mismatches", file=sys.stderr)
        return 1
    print("all ranks match the recursion")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
