#!/usr/bin/env python3
"""Run the full wall-crossing verification over every unit shift.

For each degree in --degrees and every pair count s, the script walks all
unit shifts of the merge-position graph, builds the wall-crossing report
(rank, signature sweep, finite-field sweep, cascade reconstruction,
witness vanishing), and prints one line per shift plus the residual
summary for the same shift.  Nonzero exit on any failed report.
"""

import argparse
import sys

from gwfloor.wallcross import residual_report, unit_shift_pairs, wallcross_report


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument(
        "--degrees",
        default="2,3",
        help="comma-separated degrees to sweep (default 2,3)",
    )
    ap.add_argument("--verbose", action="store_true")
    args = ap.parse_args()
    degrees = [int(t) for t in args.degrees.split(",") if t]

    failed = 0
    total = 0
    for d in degrees:
        n = 3 * d - 1
        for s in range(1, n // 2 + 1):
            for cfg_from, cfg_to in unit_shift_pairs(n, s):
                total += 1
                report = wallcross_report(d, cfg_from, cfg_to)
                residual = residual_report(d, cfg_from, cfg_to)
                ok = report.passed and residual.passed
                failed += not ok
                if args.verbose or not ok:
                    print(
                        f"d={d} {cfg_from}->{cfg_to}: "
                        f"n1={report.n1} n2={report.n2} m={report.m} "
                        f"wallcross={'ok' if report.passed else 'FAIL'} "
                        f"residual={'ok' if residual.passed else 'FAIL'}"
                    )
    print(f"{total} unit shifts checked, {failed} failures")
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
