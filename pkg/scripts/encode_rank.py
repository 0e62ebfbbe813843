#!/usr/bin/env python3
"""Rank of the encode matrix for the two candidate multiplier sets.

Rows r_j multiply, over the set bits k of j, either v_{m/2-1-k} (as written
in the formula for the collapsed layers) or v_{m/2-k} (what the top l_m
butterfly layers at base v_{l+m/2} actually use).  Only a rank-m matrix can
be inverted by decode.
"""
from frobmul.fft_core import plan_butterflies
from frobmul.gf_cantor import FIELD_DEGREES, build_field_params, gf2_rank, gf_mul


def rows(p, offset):
    out = []
    for j in range(p.m):
        r = 1
        for k in range(p.l_m):
            if j >> k & 1:
                r = gf_mul(r, p.v[p.m // 2 - offset - k], p.m)
        out.append(r)
    return out


def main():
    for m in FIELD_DEGREES:
        p = build_field_params(m)
        l = 2
        plan = plan_butterflies(p, l + p.l_m, 1 << (l + m // 2))
        used = [p.v.index(plan.multiplier(l + k, 0)) for k in range(p.l_m)]
        print(f"m={m:>3}: layer multipliers at base v_(l+m/2) are v_{used};"
              f" rank with v_(m/2-1-k): {gf2_rank(rows(p, 1))}, with v_(m/2-k): {gf2_rank(rows(p, 0))}")


if __name__ == "__main__":
    main()
