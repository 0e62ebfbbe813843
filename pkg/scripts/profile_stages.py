#!/usr/bin/env python3
"""Per-stage time shares of one multiplication size, for both fields."""
import argparse

import numpy as np

from frobmul.multiplier import STAGES, fp_polymul
from frobmul.poly_basis import BitPoly


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--log", type=int, default=16, help="operand size log2(n_bits / 64)")
    ap.add_argument("--reps", type=int, default=10)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    n_bits = 64 << args.log
    a, b = BitPoly.random(n_bits, rng), BitPoly.random(n_bits, rng)
    print(f"operands of {n_bits} bits, {args.reps} reps")
    print(f"{'stage':>12} {'m=64 ms':>10} {'m=128 ms':>10}")
    cols = {}
    for m in (64, 128):
        fp_polymul(a, b, m)
        prof = {}
        for _ in range(args.reps):
            fp_polymul(a, b, m, profile=prof)
        cols[m] = {s: prof.get(s, 0.0) / args.reps for s in STAGES}
    for s in STAGES:
        print(f"{s:>12} {cols[64][s] * 1e3:>10.2f} {cols[128][s] * 1e3:>10.2f}")
    print(f"{'total':>12} {sum(cols[64].values()) * 1e3:>10.2f} {sum(cols[128].values()) * 1e3:>10.2f}")


if __name__ == "__main__":
    main()
