"""Evaluation at the Frobenius partition  v_{l+m/2} + V_l.

The first log2(m) butterfly layers act on single-bit inputs, and only the
first n/m of their outputs are needed.  Collapsing those layers gives one
m x m bit-matrix product per output index (``encode``); ``decode`` applies
the inverse matrix.
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels as K
from .fft_core import lch_butterfly, new_evalvec, plan_butterflies
from .gf_cantor import (
    build_field_params, cantor_to_poly, gf2_inverse, gf_mul, gf_sqr, poly_to_cantor, row_vec_mul, to_words,
)
from .poly_basis import BitPoly

M4R_BITS = 4


@dataclass(frozen=True)
class PartitionSpec:
    m: int
    l: int
    base: int     # Cantor coordinates of v_{l+m/2}

    @property
    def n_p(self):
        return 1 << self.l

    @property
    def n(self):
        return self.m << self.l


def partition_spec(m, l):
    if not 0 <= l < m // 2:
        raise ValueError(f"partition dimension l={l} outside [0, {m // 2})")
    return PartitionSpec(m, l, 1 << (l + m // 2))


def encode_multipliers(p):
    """Butterfly multipliers of the collapsed layers, top layer first.

    Layer l + k evaluates s_{l+k}(v_{l+m/2}) = v_{m/2-k}, independent of l.
    """
    return tuple(p.v[p.m // 2 - k] for k in range(p.l_m - 1, -1, -1))


def _m4r_tables(rows, m):
    tabs = []
    for c in range(m // M4R_BITS):
        t = [0] * 16
        for e in range(1, 16):
            low = e & -e
            t[e] = t[e ^ low] ^ rows[M4R_BITS * c + low.bit_length() - 1]
        tabs.append(t)
    if m <= 64:
        return np.array(tabs, dtype=np.uint64)
    return np.stack([to_words(t, m) for t in tabs])


@dataclass(frozen=True)
class EncodeMatrix:
    m: int
    rows: tuple
    inv_rows: tuple
    m4r_tables: np.ndarray
    inv_m4r_tables: np.ndarray


def encode_rows(p):
    """r_j = product of v_{m/2-k} over the set bits k of j."""
    m = p.m
    rows = []
    for j in range(m):
        r = 1
        for k in range(p.l_m):
            if j >> k & 1:
                r = gf_mul(r, p.v[m // 2 - k], m)
        rows.append(r)
    return rows


def build_encode_matrix(p):
    rows = encode_rows(p)
    try:
        inv = gf2_inverse(rows, p.m)
    except np.linalg.LinAlgError:
        raise RuntimeError(f"encode matrix for m={p.m} is singular; field construction is broken") from None
    return EncodeMatrix(p.m, tuple(rows), tuple(inv), _m4r_tables(rows, p.m), _m4r_tables(inv, p.m))


@lru_cache(maxsize=None)
def cached_encode_matrix(m):
    return build_encode_matrix(build_field_params(m))


def _check_spec(spec, E):
    if spec.m != E.m:
        raise ValueError("partition and encode matrix use different fields")


def encode(a, spec, E):
    """Novelpoly bit coefficients (m * n_p of them) -> n_p field elements."""
    _check_spec(spec, E)
    if a.n_bits != spec.n:
        raise ValueError(f"encode expects {spec.n} bits, got {a.n_bits}")
    out = new_evalvec(spec.m, spec.n_p)
    if spec.m == 128:
        K.encode_128(a.words, spec.n_p, E.m4r_tables, out)
    else:
        K.encode_word(a.words, spec.n_p, spec.m, E.m4r_tables, out)
    return out


def decode(v, spec, E):
    _check_spec(spec, E)
    if v.shape[0] != spec.n_p:
        raise ValueError(f"decode expects {spec.n_p} elements, got {v.shape[0]}")
    a = BitPoly.zeros(spec.n)
    if spec.m == 128:
        K.decode_128(v, spec.n_p, E.inv_m4r_tables, a.words)
    else:
        K.decode_word(v, spec.n_p, spec.m, E.inv_m4r_tables, a.words)
    return a


def encode_reference(a, spec, E):
    """Scalar form: f_i = XOR of r_j over j with bit j*n_p + i of a set."""
    bits = a.to_bits()
    out = []
    for i in range(spec.n_p):
        f = 0
        for j in range(spec.m):
            if bits[j * spec.n_p + i]:
                f ^= E.rows[j]
        out.append(f)
    return out


def virtual_butterfly(a, spec, p, base=None):
    """First n_p outputs of the top l_m layers of the full (l + l_m)-layer butterfly.

    ``a`` holds m * n_p novelpoly bits, each lifted to a field element.  With
    the default base this is what ``encode`` computes.
    """
    base = spec.base if base is None else base
    plan = plan_butterflies(p, spec.l + p.l_m, base)
    bits = a.to_bits().astype(np.uint64)
    v = new_evalvec(p.m, bits.size)
    if p.m == 128:
        v[:, 0] = bits
    else:
        v[:] = bits
    lch_butterfly(v, plan, layers=p.l_m)
    return v[: spec.n_p].copy()


def bit_transpose_block(rows, n_cols=64):
    """Transpose an R x n_cols bit matrix given as R rows of packed 64-bit words.

    Returns an n_cols x R matrix in the same packing.  Work is done in
    64 x 64 tiles with the recursive block swap.
    """
    rows = np.asarray(rows, dtype=np.uint64)
    if rows.ndim == 1:
        rows = rows[:, None]
    n_rows = rows.shape[0]
    rt = (n_rows + 63) // 64
    ct = (n_cols + 63) // 64
    if rows.shape[1] != ct:
        raise ValueError("row width does not match n_cols")
    out = np.zeros((n_cols, rt), dtype=np.uint64)
    tile = np.zeros(64, dtype=np.uint64)
    for r in range(rt):
        for c in range(ct):
            tile[:] = 0
            chunk = rows[64 * r : 64 * r + 64, c]
            tile[: chunk.size] = chunk
            K.transpose64(tile)
            take = min(64, n_cols - 64 * c)
            out[64 * c : 64 * c + take, r] = tile[:take]
    return out


def m4r_mat_vec(E, x, inverse=False):
    """x (m-bit vector) times the encode matrix, by 4-bit table lookups."""
    tabs = E.inv_m4r_tables if inverse else E.m4r_tables
    if E.m <= 64:
        return int(K.m4r_word(tabs, np.uint64(x), E.m // 4))
    lo, hi = K.m4r_128(tabs, np.uint64(x & ((1 << 64) - 1)), np.uint64(x >> 64))
    return int(lo) | (int(hi) << 64)


def naive_mat_vec(E, x, inverse=False):
    return row_vec_mul(E.inv_rows if inverse else E.rows, x)


def enumerate_partition(spec, p):
    """All m Frobenius iterates of the partition, as frozensets of Cantor vectors."""
    if p.m > 16:
        raise ValueError("partition enumeration is limited to the m=16 test field")
    cur = frozenset(spec.base ^ u for u in range(spec.n_p))
    iterates = [cur]
    for _ in range(p.m - 1):
        cur = frozenset(poly_to_cantor(p, gf_sqr(cantor_to_poly(p, c), p.m)) for c in cur)
        iterates.append(cur)
    return iterates


def frobenius_image(p, points):
    return frozenset(poly_to_cantor(p, gf_sqr(cantor_to_poly(p, c), p.m)) for c in points)
