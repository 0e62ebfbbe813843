"""Packed GF(2)[x] polynomials and the monomial <-> novelpoly basis conversion.

The conversion divides by the two-term subspace polynomials
s_{2^k}(x) = x^(2^(2^k)) + x only.  Every step is an XOR of one bit range
into a lower one, so the whole conversion compiles to a short program of
range XORs, each tiled with a fixed period over the buffer.  Runs of steps
whose period fits in a 256-bit lane become masked lane shifts, applied to
one cache-resident block at a time.  On long inputs, short-period runs are
applied block by block and wide-aligned long-period runs column by column.
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels as K
from .gf_cantor import clmul

# runs of steps with period up to this many bits are applied one L2-sized block at a time
CVT_BLOCK_BITS = 1 << 22


@dataclass(eq=False)
class BitPoly:
    """Coefficient k lives at bit k % 64 of word k // 64; bits >= n_bits are zero."""

    words: np.ndarray
    n_bits: int

    def __post_init__(self):
        self.words = np.ascontiguousarray(self.words, dtype=np.uint64)
        if self.n_bits < 0:
            raise ValueError("n_bits must be non-negative")
        if self.words.shape != (n_words(self.n_bits),):
            raise ValueError(f"{self.n_bits} bits need {n_words(self.n_bits)} words, got {self.words.shape}")
        tail = self.n_bits & 63
        if tail and int(self.words[-1]) >> tail:
            raise ValueError("bits at positions >= n_bits must be zero")

    @classmethod
    def zeros(cls, n_bits):
        return cls(np.zeros(n_words(n_bits), dtype=np.uint64), n_bits)

    @classmethod
    def from_int(cls, value, n_bits=None):
        if value < 0:
            raise ValueError("negative polynomial encoding")
        if n_bits is None:
            n_bits = value.bit_length()
        elif value.bit_length() > n_bits:
            raise ValueError("value does not fit in n_bits")
        nw = n_words(n_bits)
        raw = value.to_bytes(8 * nw, "little")
        return cls(np.frombuffer(raw, dtype="<u8").astype(np.uint64), n_bits)

    @classmethod
    def from_bits(cls, bits):
        bits = np.asarray(bits, dtype=np.uint8)
        n = bits.size
        packed = np.packbits(bits, bitorder="little")
        buf = np.zeros(8 * n_words(n), dtype=np.uint8)
        buf[: packed.size] = packed
        return cls(buf.view("<u8").astype(np.uint64), n)

    @classmethod
    def from_bytes(cls, data):
        """Little-endian byte stream, coefficient k at bit k % 8 of byte k // 8."""
        v = int.from_bytes(data, "little")
        return cls.from_int(v)

    @classmethod
    def random(cls, n_bits, rng):
        w = rng.integers(0, 2**64, size=n_words(n_bits), dtype=np.uint64)
        tail = n_bits & 63
        if tail:
            w[-1] &= np.uint64((1 << tail) - 1)
        return cls(w, n_bits)

    def to_int(self):
        return int.from_bytes(self.words.astype("<u8").tobytes(), "little")

    def to_bits(self):
        raw = np.frombuffer(self.words.astype("<u8").tobytes(), dtype=np.uint8)
        return np.unpackbits(raw, bitorder="little")[: self.n_bits]

    def to_bytes(self):
        """Canonical trimmed byte encoding (no trailing zero bytes)."""
        v = self.to_int()
        return v.to_bytes((v.bit_length() + 7) // 8, "little")

    def degree(self):
        return self.to_int().bit_length() - 1

    def resized(self, n_bits):
        """Copy zero-padded or truncated to n_bits (truncation drops high coefficients)."""
        out = np.zeros(n_words(n_bits), dtype=np.uint64)
        k = min(out.size, self.words.size)
        out[:k] = self.words[:k]
        tail = n_bits & 63
        if tail:
            out[-1] &= np.uint64((1 << tail) - 1)
        return BitPoly(out, n_bits)

    def copy(self):
        return BitPoly(self.words.copy(), self.n_bits)

    def __xor__(self, other):
        n = max(self.n_bits, other.n_bits)
        a = self.resized(n)
        a.words ^= other.resized(n).words
        return a

    def __eq__(self, other):
        if not isinstance(other, BitPoly):
            return NotImplemented
        return self.n_bits == other.n_bits and np.array_equal(self.words, other.words)

    def __repr__(self):
        return f"BitPoly(n_bits={self.n_bits}, degree={self.degree()})"


def n_words(n_bits):
    return (n_bits + 63) // 64


# ------------------------------------------------------------ op programs

@lru_cache(maxsize=None)
def _cvt_steps(n, s):
    """Range XORs (dst, src, length, period) converting n elements of s bits each."""
    if n <= 2:
        return ()
    ln = n.bit_length() - 1
    i = 1 << ((ln - 1).bit_length() - 1)   # largest power of two with 2^i < n
    tau = 1 << i
    steps = []
    # Taylor expansion at y = x^tau + x: divide by y^(2^k) = x^D + x^d, D = tau * d
    half = n // 2
    while half >= tau:
        d = half // tau
        per = 2 * half * s
        steps.append((2 * d * s, (half + d) * s, (half - d) * s, per))
        steps.append((d * s, half * s, d * s, per))
        half //= 2
    steps.extend(_cvt_steps(n // tau, s * tau))
    steps.extend(_cvt_steps(tau, s))
    return tuple(steps)


def _lane_mask(src, length, period):
    """Source mask of a step tiled over one 256-bit lane, as four words."""
    row = ((1 << length) - 1) << src
    mask = 0
    for base in range(0, K.LANE_BITS, period):
        mask |= row << base
    return [(mask >> (64 * q)) & ((1 << 64) - 1) for q in range(4)]


@dataclass(frozen=True)
class ConversionProgram:
    n_bits: int
    ops: np.ndarray       # rows (kind, a, b, c, d), see _kernels.run_conversion
    masks: np.ndarray     # (k, 4) lane masks of the grouped steps
    shifts: np.ndarray    # (k,) lane shifts src - dst


@lru_cache(maxsize=64)
def conversion_program(n_bits):
    if n_bits <= 0 or n_bits & (n_bits - 1):
        raise ValueError(f"conversion length must be a power of two, got {n_bits}")
    ops, masks, shifts = [], [], []
    group = None
    lane = n_bits >= K.LANE_BITS
    for dst, src, length, period in _cvt_steps(n_bits, 1):
        if lane and period <= K.LANE_BITS:
            if group is None:
                group = [1, len(masks), 0, 0, 0]
                ops.append(group)
            masks.append(_lane_mask(src, length, period))
            shifts.append(src - dst)
            group[2] += 1
        else:
            group = None
            ops.append([0, dst, src, length, period])
    return ConversionProgram(
        n_bits,
        np.array(ops, dtype=np.int64).reshape(-1, 5),
        np.array(masks, dtype=np.uint64).reshape(-1, 4),
        np.array(shifts, dtype=np.int64),
    )


def _check(f):
    n = f.n_bits
    if n <= 0 or n & (n - 1):
        raise ValueError(f"basis conversion needs a power-of-two length, got {n}")


def basis_cvt(f):
    """Monomial -> novelpoly coefficients, in place; returns f."""
    _check(f)
    prog = conversion_program(f.n_bits)
    K.run_conversion(f.words, f.n_bits, prog.ops, prog.masks, prog.shifts, False, CVT_BLOCK_BITS)
    return f


def i_basis_cvt(g):
    """Novelpoly -> monomial coefficients, in place; returns g."""
    _check(g)
    prog = conversion_program(g.n_bits)
    K.run_conversion(g.words, g.n_bits, prog.ops, prog.masks, prog.shifts, True, CVT_BLOCK_BITS)
    return g


def basis_cvt_reference(value, n):
    """Unfused step-by-step conversion on a Python int (bit k = coefficient k)."""
    for dst, src, length, period in _cvt_steps(n, 1):
        row = (1 << length) - 1
        for base in range(0, n, period):
            value ^= ((value >> (base + src)) & row) << (base + dst)
    return value


def novelpoly_reference(g_bits):
    """Monomial coefficients (Python int) of sum g_k X_k, with X_k the product of s_i over the bits of k.

    The subspace polynomials come from s_0 = x, s_{i+1} = s_i^2 + s_i.
    """
    n = len(g_bits)
    s = [0b10]
    for _ in range(max(0, (n - 1).bit_length() - 1)):
        s.append(clmul(s[-1], s[-1]) ^ s[-1])
    out = 0
    for k in range(n):
        if not g_bits[k]:
            continue
        x = 1
        for i in range(k.bit_length()):
            if k >> i & 1:
                x = clmul(x, s[i])
        out ^= x
    return out
