"""LCH butterfly network over GF(2^m) and its inverse.

An EvalVec is a numpy array in kernel layout: shape (n_p,) uint64 for
m <= 64, shape (n_p, 2) uint64 (low word, high word) for m = 128.
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels as K
from .gf_cantor import (
    build_field_params, cantor_to_poly, cantor_to_poly_array, from_words, gf_mul, subspace_eval, to_words,
)

DEFAULT_BATCH_LOG = 15   # 2^15 field elements per cache batch


def new_evalvec(m, n):
    return np.zeros((n,) if m <= 64 else (n, 2), dtype=np.uint64)


@dataclass(frozen=True)
class ButterflyPlan:
    m: int
    l: int
    base: int                  # Cantor coordinates of the coset offset
    mults: np.ndarray          # layer i at offset 2^(l-1-i) - 1, one entry per block
    batch_log: int = DEFAULT_BATCH_LOG

    def multiplier(self, i, b):
        return from_words(self.mults[(1 << (self.l - 1 - i)) - 1 + b : (1 << (self.l - 1 - i)) + b])[0]

    def layer_multipliers(self, i):
        lo = (1 << (self.l - 1 - i)) - 1
        return self.mults[lo : 2 * lo + 1]


def _layer_cantor(m, base, l, i):
    # s_i(base + b * 2^(i+1)) = (base >> i) ^ (b << 1) for every block b
    nb = 1 << (l - 1 - i)
    low = np.arange(nb, dtype=np.uint64) << np.uint64(1)
    hi = subspace_eval(i, base)
    if m <= 64:
        return low ^ np.uint64(hi)
    out = np.zeros((nb, 2), dtype=np.uint64)
    out[:, 0] = low ^ np.uint64(hi & ((1 << 64) - 1))
    out[:, 1] = np.uint64(hi >> 64)
    return out


def plan_butterflies(p, l, base, batch_log=DEFAULT_BATCH_LOG):
    if l < 0:
        raise ValueError("layer count must be non-negative")
    if l > p.m:
        raise ValueError("more layers than field dimensions")
    if l == 0:
        return ButterflyPlan(p.m, 0, base, new_evalvec(p.m, 0), batch_log)
    parts = [cantor_to_poly_array(p, _layer_cantor(p.m, base, l, i)) for i in range(l - 1, -1, -1)]
    return ButterflyPlan(p.m, l, base, np.ascontiguousarray(np.concatenate(parts)), batch_log)


@lru_cache(maxsize=64)
def cached_plan(m, l, base):
    return plan_butterflies(build_field_params(m), l, base)


def _check_len(v, plan):
    if v.shape[0] != 1 << plan.l:
        raise ValueError(f"vector length {v.shape[0]} does not match plan with l={plan.l}")
    if (v.ndim == 2) != (plan.m == 128):
        raise ValueError("vector layout does not match the field")


def lch_butterfly(v, plan, layers=None, hw=None):
    """Evaluate novelpoly coefficients at base + V_l, in place.

    ``layers`` limits the run to the top layers (used by the encode oracle).
    """
    _check_len(v, plan)
    layers = plan.l if layers is None else layers
    hw = K.HAVE_PCLMUL if hw is None else hw
    if plan.m == 128:
        K.lch_128(v, plan.mults, plan.l, hw, plan.batch_log, layers)
    else:
        p = build_field_params(plan.m)
        K.lch_word(v, plan.mults, plan.l, plan.m, p.red, hw, plan.batch_log, layers)
    return v


def i_lch_butterfly(v, plan, hw=None):
    _check_len(v, plan)
    hw = K.HAVE_PCLMUL if hw is None else hw
    if plan.m == 128:
        K.ilch_128(v, plan.mults, plan.l, hw, plan.batch_log)
    else:
        p = build_field_params(plan.m)
        K.ilch_word(v, plan.mults, plan.l, plan.m, p.red, hw, plan.batch_log)
    return v


def direct_eval(g, pt, p):
    """Sum of g_k * X_k(pt), term by term; g is a sequence of ints, pt Cantor coordinates."""
    m = p.m
    s = [cantor_to_poly(p, subspace_eval(i, pt)) for i in range(max(1, len(g)).bit_length())]
    acc = 0
    for k, gk in enumerate(g):
        if not gk:
            continue
        x = 1
        for i in range(k.bit_length()):
            if k >> i & 1:
                x = gf_mul(x, s[i], m)
        acc ^= gf_mul(gk, x, m)
    return acc


def mul_arrays(p, a, b, hw=None):
    hw = K.HAVE_PCLMUL if hw is None else hw
    out = np.empty_like(a)
    if p.m == 128:
        K.vec_mul_128(a, b, out, hw)
    else:
        K.vec_mul_word(a, b, out, p.m, p.red, hw)
    return out


def direct_eval_many(g, pts, p):
    """direct_eval at many Cantor points at once; g and pts in kernel layout."""
    n = g.shape[0]
    bits = max(1, (n - 1).bit_length())
    s = []
    for i in range(bits):
        if pts.ndim == 1:
            sh = pts >> np.uint64(i)
        else:
            v = [x >> i for x in from_words(pts)]
            sh = to_words(v, p.m)
        s.append(cantor_to_poly_array(p, sh))
    xs = [None] * n
    one = to_words([1] * pts.shape[0], p.m)
    xs[0] = one
    acc = mul_arrays(p, np.broadcast_to(g[0], one.shape).copy(), one)
    for k in range(1, n):
        top = k.bit_length() - 1
        xs[k] = mul_arrays(p, xs[k ^ (1 << top)], s[top])
        acc ^= mul_arrays(p, np.broadcast_to(g[k], one.shape).copy(), xs[k])
    return acc
