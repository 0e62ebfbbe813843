#!/usr/bin/env python3
"""Time fp_polymul over a range of sizes and report the cost per doubling.

Usage:
  python3 scripts/scaling.py                       # log2(n/64) 16..23, 10 reps, m=64
  python3 scripts/scaling.py --min-log 12 --max-log 18 --reps 20 --csv out.csv
"""
import argparse
import csv
import sys

from frobmul.cli import CSV_COLUMNS, bench_rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min-log", type=int, default=16)
    ap.add_argument("--max-log", type=int, default=23)
    ap.add_argument("--reps", type=int, default=10)
    ap.add_argument("--field", type=int, choices=(64, 128), default=64)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--csv", help="also write the raw rows here")
    args = ap.parse_args()

    rows = []
    print(f"{'log2(n/64)':>10} {'mean ms':>10} {'x prev':>7} {'btfy/cvt':>9}")
    for r in bench_rows(args.min_log, args.max_log, args.reps, args.field, args.seed):
        ratio = r["mean_s"] / rows[-1]["mean_s"] if rows else float("nan")
        shape = r["butterfly_s"] / r["basiscvt_s"]
        print(f"{r['log2_size_words']:>10} {r['mean_s'] * 1e3:>10.2f} {ratio:>7.2f} {shape:>9.2f}", flush=True)
        rows.append(r)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
            w.writeheader()
            w.writerows(rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
