"""frobmul command line: mul, selftest, bench.

Exit codes: 0 ok, 1 verification failure, 2 usage or I/O error.
"""
import argparse
import csv
import os
import sys
import time

import numpy as np

from .multiplier import STAGES, SizeBoundError, fp_polymul, karatsuba_mul, plan_mul
from .poly_basis import BitPoly
from .selftest import LEVELS, SelftestConfig, run_selftest

EXIT_OK, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2

CSV_COLUMNS = ("log2_size_words", "n_bits", "m", "reps", "mean_s") + tuple(f"{s}_s" for s in STAGES)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _field_arg(s):
    if s not in ("auto", "64", "128"):
        raise argparse.ArgumentTypeError("field must be auto, 64 or 128")
    return s if s == "auto" else int(s)


def read_poly(path):
    with open(path, "rb") as fh:
        return BitPoly.from_bytes(fh.read())


def write_poly(path, poly):
    with open(path, "wb") as fh:
        fh.write(poly.to_bytes())


def cmd_mul(args):
    try:
        a, b = read_poly(args.a), read_poly(args.b)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        c = fp_polymul(a, b, args.field)
    except SizeBoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.verify and c != karatsuba_mul(a, b):
        print("error: product differs from the Karatsuba oracle", file=sys.stderr)
        return EXIT_VERIFY
    try:
        write_poly(args.out, c)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(c.degree() + 1)
    return EXIT_OK


def cmd_selftest(args):
    cfg = SelftestConfig(level=args.level, seed=args.seed, corrupt_encode_table=args.corrupt_encode_table)

    def report(r):
        status = "PASS" if r.ok else "FAIL"
        tail = f": {r.detail}" if r.detail else ""
        print(f"{status} {r.name} ({r.seconds:.2f}s){tail}", flush=True)

    results = run_selftest(cfg, report)
    failed = [r.name for r in results if not r.ok]
    if failed:
        print(f"selftest failed: {', '.join(failed)}")
        return EXIT_VERIFY
    print(f"selftest {args.level}: {len(results)} invariants ok")
    return EXIT_OK


def _pin_one_cpu():
    # best-effort measurement hygiene
    try:
        os.sched_setaffinity(0, {min(os.sched_getaffinity(0))})
    except (AttributeError, OSError):
        pass


def bench_rows(min_log, max_log, reps, field, seed, verify=True):
    """Yield one dict per size; sizes are operand lengths of 64 * 2^log bits."""
    rng = np.random.default_rng(seed)
    for lg in range(min_log, max_log + 1):
        n_bits = 64 << lg
        plan = plan_mul(n_bits, n_bits, field)
        a, b = BitPoly.random(n_bits, rng), BitPoly.random(n_bits, rng)
        c = fp_polymul(a, b, plan.m)
        if verify and lg == min_log and c != karatsuba_mul(a, b):
            raise AssertionError(f"product at {n_bits} bits differs from the Karatsuba oracle")
        prof = {}
        t0 = time.perf_counter()
        for _ in range(reps):
            fp_polymul(a, b, plan.m, profile=prof)
        total = time.perf_counter() - t0
        row = {"log2_size_words": lg, "n_bits": n_bits, "m": plan.m, "reps": reps, "mean_s": total / reps}
        for s in STAGES:
            row[f"{s}_s"] = prof.get(s, 0.0) / reps
        yield row


def cmd_bench(args):
    if args.min_log > args.max_log:
        print("error: --min-log exceeds --max-log", file=sys.stderr)
        return EXIT_USAGE
    if args.reps < 1:
        print("error: --reps must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        for lg in (args.min_log, args.max_log):
            plan_mul(64 << lg, 64 << lg, args.field)
    except (SizeBoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _pin_one_cpu()
    try:
        fh = open(args.csv, "w", newline="") if args.csv != "-" else sys.stdout
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        w = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        w.writeheader()
        for row in bench_rows(args.min_log, args.max_log, args.reps, args.field, args.seed):
            w.writerow({k: (f"{v:.6e}" if isinstance(v, float) else v) for k, v in row.items()})
            fh.flush()
    except AssertionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    finally:
        if fh is not sys.stdout:
            fh.close()
    return EXIT_OK


def build_parser():
    ap = _Parser(prog="frobmul", description="GF(2)[x] multiplication with a Frobenius-partition additive FFT")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("mul", help="multiply two polynomial files")
    p.add_argument("a", help="first factor (little-endian bit stream)")
    p.add_argument("b", help="second factor")
    p.add_argument("out", help="output file for the product")
    p.add_argument("--field", type=_field_arg, default="auto", help="auto, 64 or 128 (default auto)")
    p.add_argument("--verify", action="store_true", help="check the product against Karatsuba")
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("selftest", help="run the invariant suites")
    p.add_argument("--level", choices=LEVELS, default="quick")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--corrupt-encode-table", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_selftest)

    p = sub.add_parser("bench", help="time multiplications and write per-stage CSV")
    p.add_argument("--min-log", type=int, default=10, help="smallest log2(n_bits / 64)")
    p.add_argument("--max-log", type=int, default=16, help="largest log2(n_bits / 64)")
    p.add_argument("--reps", type=int, default=100)
    p.add_argument("--csv", default="-", help="output path, '-' for stdout")
    p.add_argument("--field", type=_field_arg, default="auto")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
