"""GF(2^m) arithmetic in polynomial representation, plus the Cantor basis.

Field elements are plain Python ints whose bit k is the coefficient of x^k.
Cantor coordinates are ints too: bit j is the coefficient of v_j.
"""
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _kernels as K

FIELD_DEGREES = (16, 64, 128)

# m=16 is a test-scale field; 64 and 128 are the production fields.
MODULI = {
    16: (1 << 16) | 0b101101,       # x^16 + x^5 + x^3 + x^2 + 1
    64: (1 << 64) | 0b11011,        # x^64 + x^4 + x^3 + x + 1
    128: (1 << 128) | 0b10000111,   # x^128 + x^7 + x^2 + x + 1
}


class FieldConstructionError(RuntimeError):
    pass


# ----------------------------------------------------------- raw GF(2)[x]

def clmul(a, b):
    """Carryless product of two non-negative ints."""
    if a.bit_length() < b.bit_length():
        a, b = b, a
    r = 0
    while b:
        low = b & -b
        r ^= a << (low.bit_length() - 1)
        b ^= low
    return r


def poly_mod(a, mod):
    dm = mod.bit_length() - 1
    while a.bit_length() - 1 >= dm:
        a ^= mod << (a.bit_length() - 1 - dm)
    return a


def poly_gcd(a, b):
    while b:
        a, b = b, poly_mod(a, b)
    return a


def is_irreducible(mod):
    """Rabin's test specialised to power-of-two degree."""
    m = mod.bit_length() - 1
    if m < 1:
        return False
    if m & (m - 1):
        raise ValueError("only power-of-two degrees are supported")
    x = 0b10
    t = x
    for _ in range(m):
        t = poly_mod(clmul(t, t), mod)
    if t != x:
        return False
    if m == 1:
        return True
    t = x
    for _ in range(m // 2):
        t = poly_mod(clmul(t, t), mod)
    return poly_gcd(mod, t ^ x) == 1


# --------------------------------------------------------- field arithmetic

def _modulus(m):
    try:
        return MODULI[m]
    except KeyError:
        raise ValueError(f"unsupported field degree m={m}; expected one of {FIELD_DEGREES}") from None


def _reduce(c, m):
    # fold the high half twice; the reduction polynomials are sparse and low degree
    red = MODULI[m] ^ (1 << m)
    mask = (1 << m) - 1
    while c >> m:
        c = (c & mask) ^ clmul(c >> m, red)
    return c


def gf_add(a, b):
    return a ^ b


def gf_mul(a, b, m):
    _modulus(m)
    return _reduce(clmul(a, b), m)


def _spread_table():
    tab = []
    for x in range(256):
        s = 0
        for j in range(8):
            if x >> j & 1:
                s |= 1 << (2 * j)
        tab.append(s)
    return tuple(tab)


_SPREAD = _spread_table()


def gf_sqr(a, m):
    """Frobenius map: squaring interleaves zero bits, then reduces."""
    _modulus(m)
    s = 0
    k = 0
    while a:
        s |= _SPREAD[a & 0xFF] << (16 * k)
        a >>= 8
        k += 1
    return _reduce(s, m)


def gf_mul_bitserial(a, b, m):
    """Interleaved shift-and-reduce multiplier; the reference for everything else."""
    mod = _modulus(m)
    r = 0
    for k in range(m - 1, -1, -1):
        r <<= 1
        if r >> m:
            r ^= mod
        if b >> k & 1:
            r ^= a
    return r


def gf_pow(a, e, m):
    r = 1
    while e:
        if e & 1:
            r = gf_mul(r, a, m)
        a = gf_mul(a, a, m)
        e >>= 1
    return r


# ------------------------------------------------------ GF(2) linear algebra

def gf2_rank(rows):
    pivots = {}
    for r in rows:
        while r:
            h = r.bit_length() - 1
            if h not in pivots:
                pivots[h] = r
                break
            r ^= pivots[h]
    return len(pivots)


def gf2_solve(rows, target):
    """Return a bit-mask ``y`` with XOR of rows[k] for bits k of y equal to target, or None."""
    pivots = {}
    for k, r in enumerate(rows):
        combo = 1 << k
        while r:
            h = r.bit_length() - 1
            if h not in pivots:
                pivots[h] = (r, combo)
                break
            pr, pc = pivots[h]
            r ^= pr
            combo ^= pc
    y = 0
    while target:
        h = target.bit_length() - 1
        if h not in pivots:
            return None
        pr, pc = pivots[h]
        target ^= pr
        y ^= pc
    return y


def gf2_inverse(rows, n):
    """Inverse of an n x n GF(2) matrix given as row ints (row-vector convention)."""
    a = list(rows)
    inv = [1 << k for k in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r] >> col & 1), None)
        if piv is None:
            raise np.linalg.LinAlgError("matrix is singular over GF(2)")
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        for r in range(n):
            if r != col and a[r] >> col & 1:
                a[r] ^= a[col]
                inv[r] ^= inv[col]
    return inv


def row_vec_mul(rows, x):
    """x (bit vector) times the matrix with the given rows."""
    acc = 0
    while x:
        low = x & -x
        acc ^= rows[low.bit_length() - 1]
        x ^= low
    return acc


# ------------------------------------------------------------ Cantor basis

def _byte_tables(rows, m):
    nb = m // 8
    tabs = []
    for b in range(nb):
        t = [0] * 256
        for x in range(1, 256):
            low = x & -x
            t[x] = t[x ^ low] ^ rows[8 * b + low.bit_length() - 1]
        tabs.append(tuple(t))
    return tuple(tabs)


def to_words(values, m):
    """Pack ints into the kernel layout: (n,) uint64 for m <= 64, (n, 2) for m = 128."""
    values = list(values)
    if m <= 64:
        return np.array(values, dtype=np.uint64)
    out = np.empty((len(values), 2), dtype=np.uint64)
    mask = (1 << 64) - 1
    for i, v in enumerate(values):
        out[i, 0] = v & mask
        out[i, 1] = v >> 64
    return out


def from_words(arr):
    if arr.ndim == 1:
        return [int(x) for x in arr]
    return [int(a) | (int(b) << 64) for a, b in arr]


def _np_tables(tabs, m):
    if m <= 64:
        return np.array(tabs, dtype=np.uint64)
    return np.stack([to_words(t, 128) for t in tabs])


@dataclass(frozen=True)
class FieldParams:
    m: int
    l_m: int
    modulus: int
    v: tuple
    c2p: tuple          # rows of the Cantor -> polynomial matrix (row j is v[j])
    p2c: tuple          # rows of its inverse
    _c2p_bytes: tuple = field(repr=False, compare=False)
    _p2c_bytes: tuple = field(repr=False, compare=False)
    c2p_np: np.ndarray = field(repr=False, compare=False)
    p2c_np: np.ndarray = field(repr=False, compare=False)

    @property
    def red(self):
        """Modulus without the leading term, as the kernel constant."""
        return np.uint64((self.modulus ^ (1 << self.m)) & ((1 << 64) - 1))

    @property
    def hw(self):
        return K.HAVE_PCLMUL

    def mul(self, a, b):
        return gf_mul(a, b, self.m)

    def sqr(self, a):
        return gf_sqr(a, self.m)


def _solve_artin_schreier(m, c):
    # y -> y^2 + y is GF(2)-linear with kernel {0, 1}
    rows = [gf_sqr(1 << k, m) ^ (1 << k) for k in range(m)]
    y = gf2_solve(rows, c)
    if y is None:
        return None
    return min(y, y ^ 1)


@lru_cache(maxsize=None)
def build_field_params(m):
    mod = _modulus(m)
    if not is_irreducible(mod):
        raise FieldConstructionError(f"modulus for m={m} is reducible")
    l_m = m.bit_length() - 1
    v = [1]
    for i in range(1, m):
        y = _solve_artin_schreier(m, v[i - 1])
        if y is None:
            raise FieldConstructionError(f"y^2 + y = v_{i - 1} has no solution for m={m}")
        v.append(y)
    for i in range(1, m):
        if gf_sqr(v[i], m) ^ v[i] != v[i - 1]:
            raise FieldConstructionError(f"Cantor recurrence fails at i={i}")
    if gf2_rank(v) != m:
        raise FieldConstructionError("Cantor basis vectors are linearly dependent")
    c2p = tuple(v)
    p2c = tuple(gf2_inverse(c2p, m))
    c2p_b = _byte_tables(c2p, m)
    p2c_b = _byte_tables(p2c, m)
    return FieldParams(
        m=m, l_m=l_m, modulus=mod, v=tuple(v), c2p=c2p, p2c=p2c,
        _c2p_bytes=c2p_b, _p2c_bytes=p2c_b,
        c2p_np=_np_tables(c2p_b, m), p2c_np=_np_tables(p2c_b, m),
    )


def _apply_bytes(tabs, x):
    acc = 0
    k = 0
    while x:
        acc ^= tabs[k][x & 0xFF]
        x >>= 8
        k += 1
    return acc


def cantor_to_poly(p, c):
    return _apply_bytes(p._c2p_bytes, c)


def poly_to_cantor(p, a):
    return _apply_bytes(p._p2c_bytes, a)


def _apply_bytes_np(tabs, x):
    x = np.asarray(x, dtype=np.uint64)
    if x.ndim == 1:
        out = np.zeros(x.shape[0], dtype=np.uint64)
        for b in range(tabs.shape[0]):
            out ^= tabs[b][(x >> np.uint64(8 * b)) & np.uint64(0xFF)]
        return out
    out = np.zeros((x.shape[0], 2), dtype=np.uint64)
    for b in range(tabs.shape[0]):
        word, sh = divmod(8 * b, 64)
        out ^= tabs[b][(x[:, word] >> np.uint64(sh)) & np.uint64(0xFF)]
    return out


def cantor_to_poly_array(p, x):
    """Vectorised representation change; x in the kernel word layout."""
    return _apply_bytes_np(p.c2p_np, x)


def poly_to_cantor_array(p, x):
    return _apply_bytes_np(p.p2c_np, x)


def subspace_eval(i, a):
    """s_i(a) in Cantor coordinates: a logical right shift."""
    if i < 0:
        raise ValueError("layer index must be non-negative")
    return a >> i


def subspace_poly_eval(p, i, a):
    """s_i(a) in polynomial representation, by composing s_1(x) = x^2 + x."""
    for _ in range(i):
        a = gf_sqr(a, p.m) ^ a
    return a


def frobenius_order_of_basis(i):
    if i <= 0:
        raise ValueError("order formula holds for i > 0 only (v_0 = 1 is fixed by squaring)")
    return 2 << (i.bit_length() - 1)


def frobenius_order(p, a):
    """Smallest j > 0 with a^(2^j) = a, by iteration."""
    x = gf_sqr(a, p.m)
    j = 1
    while x != a:
        x = gf_sqr(x, p.m)
        j += 1
    return j
