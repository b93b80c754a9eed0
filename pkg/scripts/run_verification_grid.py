#!/usr/bin/env python3
"""Run the ADHM identity verification over a configurable grid.

The quick preset covers the acceptance grid (g in {2,3}, r in {1,2,3},
p in {1,2}, d = 1 plus d = 2 for rank 3).  The full preset pushes to the
desk-scale limit (g up to 6, p up to 8) and takes correspondingly longer;
individual cells stay independent, so interrupting loses nothing but the
current cell.

Usage:
    python3 scripts/run_verification_grid.py --quick
    python3 scripts/run_verification_grid.py --g 2..4 --r 1..3 --p 1..4 \
        --trials 20 --seed 7 --out grid_report.json
"""

import argparse
import sys
import time

from motiveforge.cli import _parse_range, run_adhm_grid
from motiveforge.export import dump_json


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--quick", action="store_true", help="acceptance-grid preset")
    ap.add_argument("--g", type=_parse_range, default=[2])
    ap.add_argument("--r", type=_parse_range, default=[1, 2, 3])
    ap.add_argument("--p", type=_parse_range, default=[1])
    ap.add_argument("--d", type=_parse_range, default=[1])
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    if args.quick:
        args.g, args.r, args.p, args.d = [2, 3], [1, 2, 3], [1, 2], [1, 2]

    started = time.monotonic()
    reports, skipped = run_adhm_grid(args.g, args.r, args.d, args.p,
                                     trials=args.trials, seed=args.seed,
                                     threads=args.threads)
    elapsed = time.monotonic() - started
    for rep in reports:
        status = "pass" if rep.passed else "FAIL"
        hodge = {True: "exact", False: "MISMATCH", None: "skipped"}[rep.hodge_equal]
        print(f"g={rep.g} r={rep.r} d={rep.d} p={rep.p}: {status} "
              f"(weil {rep.weil_trials - rep.weil_failures}/{rep.weil_trials}, "
              f"hodge {hodge}, {rep.wall_time_ms} ms)")
    for cell in skipped:
        print(f"g={cell['g']} r={cell['r']} d={cell['d']} p={cell['p']}: "
              f"skipped ({cell['reason']})")
    all_pass = all(rep.passed for rep in reports)
    print(f"{len(reports)} cells in {elapsed:.1f} s; "
          f"{'all pass' if all_pass else 'FAILURES PRESENT'}")
    if args.out:
        payload = {
            "schema": 1,
            "seed": args.seed,
            "trials": args.trials,
            "cells": [rep.__dict__ for rep in reports],
            "skipped": skipped,
            "all_pass": all_pass,
        }
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dump_json(payload))
    return 0 if all_pass else 1


if __name__ == "__main__":
    sys.exit(main())
