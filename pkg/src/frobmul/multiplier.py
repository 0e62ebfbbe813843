"""End-to-end GF(2)[x] multiplication and its reference multipliers."""
import time
from contextlib import contextmanager
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .fft_core import cached_plan, i_lch_butterfly, lch_butterfly, mul_arrays
from .frobenius_encode import PartitionSpec, cached_encode_matrix, decode, encode, partition_spec
from .gf_cantor import build_field_params, gf_sqr
from .poly_basis import BitPoly, basis_cvt, i_basis_cvt

# Below this input length the FFT set-up costs more than Karatsuba.
FFT_THRESHOLD = 1 << 12

STAGES = ("basiscvt", "encode", "butterfly", "pointwise", "ibutterfly", "decode", "ibasiscvt")


class SizeBoundError(ValueError):
    """The requested product does not fit the partition bound of any allowed field."""


@dataclass(frozen=True)
class MulPlan:
    n: int
    l_n: int
    m: int
    l_m: int
    l: int
    n_p: int
    spec: PartitionSpec


def _parse_field(field):
    if field in ("auto", None):
        return (64, 128)
    if isinstance(field, str):
        field = field.lower().lstrip("m")
    m = int(field)
    if m not in (16, 64, 128):
        raise ValueError(f"unknown field choice {field!r}")
    return (m,)


def max_padded_length(m):
    """Largest padded product length n the partition supports: l = l_n - l_m < m/2."""
    return m << (m // 2 - 1)


def plan_mul(len_a, len_b, field="auto"):
    if len_a < 1 or len_b < 1:
        raise ValueError("input lengths must be at least 1 bit")
    n = 1 << (2 * max(len_a, len_b) - 1).bit_length()
    for m in _parse_field(field):
        nn = max(n, m)
        l_n = nn.bit_length() - 1
        l_m = m.bit_length() - 1
        l = l_n - l_m
        if l < m // 2:
            return MulPlan(nn, l_n, m, l_m, l, 1 << l, partition_spec(m, l))
    raise SizeBoundError(
        f"inputs of {len_a} and {len_b} bits need n = 2^{n.bit_length() - 1}, "
        f"beyond the supported bound for field {field}"
    )


@contextmanager
def _timed(profile, key):
    if profile is None:
        yield
        return
    t0 = time.perf_counter()
    yield
    profile[key] = profile.get(key, 0.0) + time.perf_counter() - t0


def pointwise_mul(u, v, m=None):
    if u.shape != v.shape:
        raise ValueError(f"length mismatch: {u.shape} vs {v.shape}")
    if m is None:
        m = 128 if u.ndim == 2 else 64
    return mul_arrays(build_field_params(m), u, v)


def evaluate(a, plan, profile=None):
    """Values of ``a`` (n_bits <= plan.n) at the partition of ``plan``."""
    f = a.resized(plan.n)
    with _timed(profile, "basiscvt"):
        basis_cvt(f)
    with _timed(profile, "encode"):
        v = encode(f, plan.spec, cached_encode_matrix(plan.m))
    with _timed(profile, "butterfly"):
        lch_butterfly(v, cached_plan(plan.m, plan.l, plan.spec.base))
    return v


def interpolate(v, plan, profile=None):
    with _timed(profile, "ibutterfly"):
        i_lch_butterfly(v, cached_plan(plan.m, plan.l, plan.spec.base))
    with _timed(profile, "decode"):
        c = decode(v, plan.spec, cached_encode_matrix(plan.m))
    with _timed(profile, "ibasiscvt"):
        i_basis_cvt(c)
    return c


def fp_polymul(a, b, field="auto", fft_threshold=FFT_THRESHOLD, profile=None):
    """A * B over GF(2)[x]; the result has exactly len_a + len_b - 1 bits.

    With ``field="auto"`` short inputs go to Karatsuba.  An explicit field
    (16, 64 or 128) always runs the FFT pipeline.
    """
    if a.n_bits == 0 or b.n_bits == 0:
        return BitPoly.zeros(0)
    out_bits = a.n_bits + b.n_bits - 1
    if field in ("auto", None) and max(a.n_bits, b.n_bits) < fft_threshold:
        return karatsuba_mul(a, b)
    plan = plan_mul(a.n_bits, b.n_bits, field)
    va = evaluate(a, plan, profile)
    vb = evaluate(b, plan, profile)
    with _timed(profile, "pointwise"):
        vc = pointwise_mul(va, vb, plan.m)
    c = interpolate(vc, plan, profile)
    return c.resized(out_bits)


def _product_bits(a, b):
    return a.n_bits + b.n_bits - 1 if a.n_bits and b.n_bits else 0


def naive_mul(a, b, hw=None):
    """Schoolbook word-by-word carryless product."""
    hw = K.HAVE_PCLMUL if hw is None else hw
    n = _product_bits(a, b)
    if n == 0:
        return BitPoly.zeros(0)
    out = np.zeros(a.words.size + b.words.size, dtype=np.uint64)
    K.naive_words(a.words, b.words, out, hw)
    return BitPoly(out, 64 * out.size).resized(n)


def karatsuba_mul(a, b, hw=None):
    hw = K.HAVE_PCLMUL if hw is None else hw
    n = _product_bits(a, b)
    if n == 0:
        return BitPoly.zeros(0)
    out = K.karatsuba_words(a.words, b.words, hw)
    return BitPoly(out, 64 * out.size).resized(n)


def horner_eval(a, x, m):
    """a(x) for a GF(2)-coefficient polynomial and x in GF(2^m)."""
    p = build_field_params(m)
    if a.n_bits == 0:
        return 0
    if m <= 64:
        return int(K.horner_word(a.words, a.n_bits, np.uint64(x), m, p.red, p.hw))
    lo, hi = K.horner_128(a.words, a.n_bits, np.uint64(x & ((1 << 64) - 1)), np.uint64(x >> 64), p.hw)
    return int(lo) | (int(hi) << 64)


def frobenius_value_check(a, x, m):
    """Whether a(x^2) == a(x)^2 holds."""
    return horner_eval(a, gf_sqr(x, m), m) == gf_sqr(horner_eval(a, x, m), m)
