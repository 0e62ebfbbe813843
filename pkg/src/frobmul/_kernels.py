"""Compiled kernels shared by the field, conversion, butterfly and encode layers.

Every kernel takes an ``hw`` flag selecting the hardware carryless multiply.
The portable shift-and-XOR path is always compiled and is bit-identical.
"""
import platform

import numpy as np
from llvmlite import binding as llvm_binding
from llvmlite import ir
from numba import njit, types
from numba.core import cgutils
from numba.extending import intrinsic

ZERO = np.uint64(0)
ONE = np.uint64(1)
ALL = np.uint64(0xFFFFFFFFFFFFFFFF)
RED128 = np.uint64(0x87)


def _host_has_pclmul():
    if platform.machine().lower() not in ("x86_64", "amd64"):
        return False
    try:
        feats = llvm_binding.get_host_cpu_features()
    except RuntimeError:
        return False
    return bool(feats.get("pclmul", False))


HAVE_PCLMUL = _host_has_pclmul()


@njit(cache=True)
def clmul_sw(a, b):
    """64x64 -> 128 carryless product, portable."""
    lo = a & (ZERO - (b & ONE))
    hi = ZERO
    for k in range(1, 64):
        sh = np.uint64(k)
        msk = ZERO - ((b >> sh) & ONE)
        lo ^= (a << sh) & msk
        hi ^= (a >> np.uint64(64 - k)) & msk
    return lo, hi


if HAVE_PCLMUL:

    @intrinsic
    def _pclmul(typingctx, a, b):
        sig = types.UniTuple(types.uint64, 2)(types.uint64, types.uint64)

        def codegen(context, builder, signature, args):
            i32 = ir.IntType(32)
            vec = ir.VectorType(ir.IntType(64), 2)
            fnty = ir.FunctionType(vec, [vec, vec, ir.IntType(8)])
            fn = cgutils.get_or_insert_function(builder.module, fnty, "llvm.x86.pclmulqdq")
            undef = ir.Constant(vec, ir.Undefined)
            va = builder.insert_element(undef, args[0], ir.Constant(i32, 0))
            vb = builder.insert_element(undef, args[1], ir.Constant(i32, 0))
            r = builder.call(fn, [va, vb, ir.Constant(ir.IntType(8), 0)])
            lo = builder.extract_element(r, ir.Constant(i32, 0))
            hi = builder.extract_element(r, ir.Constant(i32, 1))
            return context.make_tuple(builder, signature.return_type, (lo, hi))

        return sig, codegen

    @njit(cache=True)
    def clmul_hw(a, b):
        return _pclmul(a, b)

else:
    clmul_hw = clmul_sw


@njit(cache=True)
def clmul(a, b, hw):
    if hw:
        return clmul_hw(a, b)
    return clmul_sw(a, b)


# ---------------------------------------------------------------- field mult

@njit(cache=True)
def gf_mul_word(a, b, m, red, hw):
    """Product in GF(2^m), m <= 64, modulus x^m + red with deg(red) small."""
    lo, hi = clmul(a, b, hw)
    if m == 64:
        l2, h2 = clmul(hi, red, hw)
        l3, _ = clmul(h2, red, hw)
        return lo ^ l2 ^ l3
    sh = np.uint64(m)
    mask = (ONE << sh) - ONE
    top = lo >> sh
    t, _ = clmul(top, red, hw)
    t2, _ = clmul(t >> sh, red, hw)
    return (lo ^ t ^ t2) & mask


@njit(cache=True)
def gf_mul_128(a0, a1, b0, b1, hw):
    """Product in GF(2^128) mod x^128 + x^7 + x^2 + x + 1, as (low, high) words."""
    l0, h0 = clmul(a0, b0, hw)
    l2, h2 = clmul(a1, b1, hw)
    lm, hm = clmul(a0 ^ a1, b0 ^ b1, hw)
    lm ^= l0 ^ l2
    hm ^= h0 ^ h2
    w0 = l0
    w1 = h0 ^ lm
    w2 = l2 ^ hm
    w3 = h2
    tl, th = clmul(w3, RED128, hw)
    w2 ^= th
    w1 ^= tl
    tl, th = clmul(w2, RED128, hw)
    w1 ^= th
    w0 ^= tl
    return w0, w1


@njit(cache=True)
def vec_mul_word(a, b, out, m, red, hw):
    for i in range(a.shape[0]):
        out[i] = gf_mul_word(a[i], b[i], m, red, hw)


@njit(cache=True)
def vec_mul_128(a, b, out, hw):
    for i in range(a.shape[0]):
        r0, r1 = gf_mul_128(a[i, 0], a[i, 1], b[i, 0], b[i, 1], hw)
        out[i, 0] = r0
        out[i, 1] = r1


@njit(cache=True)
def horner_word(words, n_bits, x, m, red, hw):
    """Evaluate a GF(2)-coefficient polynomial at x in GF(2^m), m <= 64."""
    acc = ZERO
    for k in range(n_bits - 1, -1, -1):
        acc = gf_mul_word(acc, x, m, red, hw)
        acc ^= (words[k >> 6] >> np.uint64(k & 63)) & ONE
    return acc


@njit(cache=True)
def horner_128(words, n_bits, x0, x1, hw):
    a0 = ZERO
    a1 = ZERO
    for k in range(n_bits - 1, -1, -1):
        a0, a1 = gf_mul_128(a0, a1, x0, x1, hw)
        a0 ^= (words[k >> 6] >> np.uint64(k & 63)) & ONE
    return a0, a1


# ----------------------------------------------------------------- butterfly

@njit(cache=True)
def _layer_word(v, mults, l, i, lo, hi, m, red, hw):
    half = 1 << i
    off = (1 << (l - 1 - i)) - 1
    for start in range(lo, hi, 2 * half):
        c = mults[off + (start >> (i + 1))]
        for k in range(start, start + half):
            p1 = v[k + half]
            h0 = v[k] ^ gf_mul_word(c, p1, m, red, hw)
            v[k] = h0
            v[k + half] = h0 ^ p1


@njit(cache=True)
def _ilayer_word(v, mults, l, i, lo, hi, m, red, hw):
    half = 1 << i
    off = (1 << (l - 1 - i)) - 1
    for start in range(lo, hi, 2 * half):
        c = mults[off + (start >> (i + 1))]
        for k in range(start, start + half):
            h0 = v[k]
            p1 = h0 ^ v[k + half]
            v[k] = h0 ^ gf_mul_word(c, p1, m, red, hw)
            v[k + half] = p1


@njit(cache=True)
def _layer_128(v, mults, l, i, lo, hi, hw):
    half = 1 << i
    off = (1 << (l - 1 - i)) - 1
    for start in range(lo, hi, 2 * half):
        j = off + (start >> (i + 1))
        c0 = mults[j, 0]
        c1 = mults[j, 1]
        for k in range(start, start + half):
            p0 = v[k + half, 0]
            p1 = v[k + half, 1]
            r0, r1 = gf_mul_128(c0, c1, p0, p1, hw)
            h0 = v[k, 0] ^ r0
            h1 = v[k, 1] ^ r1
            v[k, 0] = h0
            v[k, 1] = h1
            v[k + half, 0] = h0 ^ p0
            v[k + half, 1] = h1 ^ p1


@njit(cache=True)
def _ilayer_128(v, mults, l, i, lo, hi, hw):
    half = 1 << i
    off = (1 << (l - 1 - i)) - 1
    for start in range(lo, hi, 2 * half):
        j = off + (start >> (i + 1))
        c0 = mults[j, 0]
        c1 = mults[j, 1]
        for k in range(start, start + half):
            h0 = v[k, 0]
            h1 = v[k, 1]
            p0 = h0 ^ v[k + half, 0]
            p1 = h1 ^ v[k + half, 1]
            r0, r1 = gf_mul_128(c0, c1, p0, p1, hw)
            v[k, 0] = h0 ^ r0
            v[k, 1] = h1 ^ r1
            v[k + half, 0] = p0
            v[k + half, 1] = p1


@njit(cache=True)
def lch_word(v, mults, l, m, red, hw, batch_log, layers):
    """Run the top ``layers`` butterfly layers (l-1 down to l-layers)."""
    n = v.shape[0]
    last = l - layers
    i = l - 1
    while i >= last and i + 1 > batch_log:
        _layer_word(v, mults, l, i, 0, n, m, red, hw)
        i -= 1
    if i >= last:
        bs = 1 << (i + 1)
        for s in range(0, n, bs):
            for j in range(i, last - 1, -1):
                _layer_word(v, mults, l, j, s, s + bs, m, red, hw)


@njit(cache=True)
def ilch_word(v, mults, l, m, red, hw, batch_log):
    n = v.shape[0]
    top = min(l, batch_log)
    if top > 0:
        bs = 1 << top
        for s in range(0, n, bs):
            for j in range(top):
                _ilayer_word(v, mults, l, j, s, s + bs, m, red, hw)
    for j in range(top, l):
        _ilayer_word(v, mults, l, j, 0, n, m, red, hw)


@njit(cache=True)
def lch_128(v, mults, l, hw, batch_log, layers):
    n = v.shape[0]
    last = l - layers
    i = l - 1
    while i >= last and i + 1 > batch_log:
        _layer_128(v, mults, l, i, 0, n, hw)
        i -= 1
    if i >= last:
        bs = 1 << (i + 1)
        for s in range(0, n, bs):
            for j in range(i, last - 1, -1):
                _layer_128(v, mults, l, j, s, s + bs, hw)


@njit(cache=True)
def ilch_128(v, mults, l, hw, batch_log):
    n = v.shape[0]
    top = min(l, batch_log)
    if top > 0:
        bs = 1 << top
        for s in range(0, n, bs):
            for j in range(top):
                _ilayer_128(v, mults, l, j, s, s + bs, hw)
    for j in range(top, l):
        _ilayer_128(v, mults, l, j, 0, n, hw)


# ---------------------------------------------------------- bit range kernels

@njit(cache=True)
def _read_bits(w, pos, take):
    # take in 1..64 bits starting at bit pos
    sw = pos >> 6
    sb = pos & 63
    val = w[sw] >> np.uint64(sb)
    if sb + take > 64:
        val |= w[sw + 1] << np.uint64(64 - sb)
    if take < 64:
        val &= (ONE << np.uint64(take)) - ONE
    return val


@njit(cache=True)
def xor_bits(w, dst, src, nbits):
    """w[dst:dst+nbits] ^= w[src:src+nbits] on bit ranges that do not overlap."""
    if nbits <= 0:
        return
    db = dst & 63
    if db:
        take = min(64 - db, nbits)
        w[dst >> 6] ^= _read_bits(w, src, take) << np.uint64(db)
        dst += take
        src += take
        nbits -= take
    nfull = nbits >> 6
    dw = dst >> 6
    sw = src >> 6
    sb = src & 63
    if sb == 0:
        for q in range(nfull):
            w[dw + q] ^= w[sw + q]
    else:
        lo = np.uint64(sb)
        hi = np.uint64(64 - sb)
        for q in range(nfull):
            w[dw + q] ^= (w[sw + q] >> lo) | (w[sw + q + 1] << hi)
    rem = nbits & 63
    if rem:
        w[dw + nfull] ^= _read_bits(w, src + 64 * nfull, rem)


@njit(cache=True)
def _xor_tiled_small(w, dst, src, ln, per):
    # misaligned range XOR with a short period: per-word destination masks
    nw = w.shape[0]
    pw = per >> 6
    dm = np.zeros(pw, dtype=np.uint64)
    for q in range(pw):
        lo = max(dst, 64 * q)
        hi = min(dst + ln, 64 * q + 64)
        if hi > lo:
            width = hi - lo
            mk = ALL if width == 64 else ((ONE << np.uint64(width)) - ONE)
            dm[q] = mk << np.uint64(lo - 64 * q)
    d = src - dst
    dq = d >> 6
    o = np.uint64(d & 63)
    ob = np.uint64(64 - (d & 63))
    for base in range(0, nw, pw):
        for q in range(pw):
            mk = dm[q]
            if mk:
                i = base + q + dq
                x = w[i] >> o
                if o and i + 1 < nw:
                    x |= w[i + 1] << ob
                w[base + q] ^= x & mk


LANE_BITS = 256
LANE_BLOCK = 512      # words per L1 buffer for lane groups
SMALL_PERIOD = 4096


@njit(cache=True)
def _lane_pass(buf, n, m0, m1, m2, m3, d):
    # on every 256-bit lane x of buf[:n]: x ^= (x & M) >> d, with 0 < d < 256
    if m0 == m1 and m1 == m2 and m2 == m3 and d < 64:
        sh = np.uint64(d)
        for q in range(n):
            x = buf[q]
            buf[q] = x ^ ((x & m0) >> sh)
        return
    dq = d >> 6
    o = np.uint64(d & 63)
    ob = np.uint64((64 - (d & 63)) & 63)
    funnel = (d & 63) != 0
    for e in range(n >> 2):
        b = 4 * e
        y0 = buf[b] & m0
        y1 = buf[b + 1] & m1
        y2 = buf[b + 2] & m2
        y3 = buf[b + 3] & m3
        if dq == 0:
            s0, s1, s2, s3, s4 = y0, y1, y2, y3, ZERO
        elif dq == 1:
            s0, s1, s2, s3, s4 = y1, y2, y3, ZERO, ZERO
        elif dq == 2:
            s0, s1, s2, s3, s4 = y2, y3, ZERO, ZERO, ZERO
        else:
            s0, s1, s2, s3, s4 = y3, ZERO, ZERO, ZERO, ZERO
        if funnel:
            buf[b] ^= (s0 >> o) | (s1 << ob)
            buf[b + 1] ^= (s1 >> o) | (s2 << ob)
            buf[b + 2] ^= (s2 >> o) | (s3 << ob)
            buf[b + 3] ^= (s3 >> o) | (s4 << ob)
        else:
            buf[b] ^= s0
            buf[b + 1] ^= s1
            buf[b + 2] ^= s2
            buf[b + 3] ^= s3


@njit(cache=True)
def _lane_group(w, masks, shifts, g0, gn, reverse):
    # masks[j] holds the four words of the lane mask of entry j
    nw = w.shape[0]
    buf = np.empty(LANE_BLOCK, dtype=np.uint64)
    for b0 in range(0, nw, LANE_BLOCK):
        n = min(LANE_BLOCK, nw - b0)
        for q in range(n):
            buf[q] = w[b0 + q]
        for t in range(gn):
            j = g0 + gn - 1 - t if reverse else g0 + t
            _lane_pass(buf, n, masks[j, 0], masks[j, 1], masks[j, 2], masks[j, 3], shifts[j])
        for q in range(n):
            w[b0 + q] = buf[q]


@njit(cache=True)
def _run_op(w, n_bits, ops, masks, shifts, r, reverse):
    kind = ops[r, 0]
    if kind == 0:
        dst = ops[r, 1]
        src = ops[r, 2]
        ln = ops[r, 3]
        per = ops[r, 4]
        if ((dst | src | ln) & 63) == 0:
            dw = dst >> 6
            sw = src >> 6
            lw = ln >> 6
            pw = per >> 6
            for base in range(0, w.shape[0], pw):
                for q in range(lw):
                    w[base + dw + q] ^= w[base + sw + q]
        elif 64 <= per <= SMALL_PERIOD:
            _xor_tiled_small(w, dst, src, ln, per)
        else:
            for base in range(0, n_bits, per):
                xor_bits(w, base + dst, base + src, ln)
    else:
        _lane_group(w, masks, shifts, ops[r, 1], ops[r, 2], reverse)


@njit(cache=True)
def _op_period(ops, r):
    return LANE_BITS if ops[r, 0] == 1 else ops[r, 4]


COL_WORDS = 8         # words per row gathered by a column pass
COL_ROWS_LOG = 14     # at most 2^14 rows, so a column strip is 1 MiB
COL_MIN_UNIT = 512


@njit(cache=True)
def _op_align(ops, r):
    """Largest power of two dividing dst, src and length of a range XOR, 0 for lane groups."""
    if ops[r, 0] != 0:
        return 0
    x = ops[r, 1] | ops[r, 2] | ops[r, 3]
    return x & -x


@njit(cache=True)
def _run_columns(w, n_bits, ops, t, t1, reverse, unit):
    # Every op in the run moves whole unit-sized rows, so each word column
    # of the (n_bits / unit) x (unit / 64) view is independent.
    k_ops = ops.shape[0]
    uw = unit >> 6
    rows = n_bits // unit
    cw = min(COL_WORDS, uw)
    buf = np.empty((rows, cw), dtype=np.uint64)
    for c0 in range(0, uw, cw):
        for i in range(rows):
            for q in range(cw):
                buf[i, q] = w[i * uw + c0 + q]
        for u in range(t, t1):
            r = k_ops - 1 - u if reverse else u
            dst = ops[r, 1] // unit
            src = ops[r, 2] // unit
            ln = ops[r, 3] // unit
            per = ops[r, 4] // unit
            for base in range(0, rows, per):
                for k in range(ln):
                    for q in range(cw):
                        buf[base + dst + k, q] ^= buf[base + src + k, q]
        for i in range(rows):
            for q in range(cw):
                w[i * uw + c0 + q] = buf[i, q]


@njit(cache=True)
def run_conversion(w, n_bits, ops, masks, shifts, reverse, block_bits):
    """Execute a basis-conversion program, backwards when ``reverse``.

    ops rows are (kind, a, b, c, d):
      kind 0: range XOR, dst=a, src=b, length=c, period=d, tiled over n_bits
      kind 1: lane group, entries [a, a+b) of 256-bit masks and shifts
    Every op acts on each period-sized chunk on its own, so a run of
    consecutive ops with period <= block_bits is executed block by block.
    Large-period ops whose offsets are multiples of a wide unit are run
    together one column strip at a time.
    """
    k_ops = ops.shape[0]
    bw = block_bits >> 6
    min_unit = max(COL_MIN_UNIT, n_bits >> COL_ROWS_LOG)
    t = 0
    while t < k_ops:
        r = k_ops - 1 - t if reverse else t
        if n_bits <= block_bits:
            _run_op(w, n_bits, ops, masks, shifts, r, reverse)
            t += 1
            continue
        if _op_period(ops, r) > block_bits:
            unit = _op_align(ops, r)
            if unit < min_unit:
                _run_op(w, n_bits, ops, masks, shifts, r, reverse)
                t += 1
                continue
            t1 = t + 1
            while t1 < k_ops:
                a = _op_align(ops, k_ops - 1 - t1 if reverse else t1)
                if a < min_unit:
                    break
                unit = min(unit, a)
                t1 += 1
            _run_columns(w, n_bits, ops, t, t1, reverse, unit)
            t = t1
            continue
        t1 = t + 1
        while t1 < k_ops:
            if _op_period(ops, k_ops - 1 - t1 if reverse else t1) > block_bits:
                break
            t1 += 1
        for b0 in range(0, w.shape[0], bw):
            sub = w[b0 : b0 + bw]
            for u in range(t, t1):
                _run_op(sub, block_bits, ops, masks, shifts, k_ops - 1 - u if reverse else u, reverse)
        t = t1


# ------------------------------------------------------- transpose and M4R

@njit(cache=True)
def transpose64(a):
    """In-place 64x64 bit transpose; row r is a[r], column c is bit c."""
    j = 32
    msk = np.uint64(0x00000000FFFFFFFF)
    while j != 0:
        sj = np.uint64(j)
        for k in range(64):
            if (k & j) == 0:
                t = ((a[k] >> sj) ^ a[k | j]) & msk
                a[k | j] ^= t
                a[k] ^= t << sj
        j >>= 1
        msk ^= msk << np.uint64(j)


@njit(cache=True)
def m4r_word(tables, x, chunks):
    acc = ZERO
    for c in range(chunks):
        acc ^= tables[c, (x >> np.uint64(4 * c)) & np.uint64(15)]
    return acc


@njit(cache=True)
def m4r_128(tables, x0, x1):
    a0 = ZERO
    a1 = ZERO
    for c in range(16):
        e = (x0 >> np.uint64(4 * c)) & np.uint64(15)
        a0 ^= tables[c, e, 0]
        a1 ^= tables[c, e, 1]
    for c in range(16):
        e = (x1 >> np.uint64(4 * c)) & np.uint64(15)
        a0 ^= tables[16 + c, e, 0]
        a1 ^= tables[16 + c, e, 1]
    return a0, a1


@njit(cache=True)
def _get_bit(w, k):
    return (w[k >> 6] >> np.uint64(k & 63)) & ONE


@njit(cache=True)
def encode_word(a, n_p, m, tables, out):
    chunks = m // 4
    if n_p >= 64:
        stride = n_p // 64
        blk = np.zeros(64, np.uint64)
        for t in range(stride):
            for j in range(m):
                blk[j] = a[j * stride + t]
            for j in range(m, 64):
                blk[j] = ZERO
            transpose64(blk)
            for i in range(64):
                out[t * 64 + i] = m4r_word(tables, blk[i], chunks)
    else:
        for i in range(n_p):
            x = ZERO
            for j in range(m):
                x |= _get_bit(a, j * n_p + i) << np.uint64(j)
            out[i] = m4r_word(tables, x, chunks)


@njit(cache=True)
def decode_word(v, n_p, m, tables, a):
    chunks = m // 4
    if n_p >= 64:
        stride = n_p // 64
        blk = np.zeros(64, np.uint64)
        for t in range(stride):
            for i in range(64):
                blk[i] = m4r_word(tables, v[t * 64 + i], chunks)
            transpose64(blk)
            for j in range(m):
                a[j * stride + t] = blk[j]
    else:
        for q in range(a.shape[0]):
            a[q] = ZERO
        for i in range(n_p):
            x = m4r_word(tables, v[i], chunks)
            for j in range(m):
                k = j * n_p + i
                a[k >> 6] |= ((x >> np.uint64(j)) & ONE) << np.uint64(k & 63)


@njit(cache=True)
def encode_128(a, n_p, tables, out):
    if n_p >= 64:
        stride = n_p // 64
        lo = np.zeros(64, np.uint64)
        hi = np.zeros(64, np.uint64)
        for t in range(stride):
            for j in range(64):
                lo[j] = a[j * stride + t]
                hi[j] = a[(64 + j) * stride + t]
            transpose64(lo)
            transpose64(hi)
            for i in range(64):
                r0, r1 = m4r_128(tables, lo[i], hi[i])
                out[t * 64 + i, 0] = r0
                out[t * 64 + i, 1] = r1
    else:
        for i in range(n_p):
            x0 = ZERO
            x1 = ZERO
            for j in range(64):
                x0 |= _get_bit(a, j * n_p + i) << np.uint64(j)
                x1 |= _get_bit(a, (64 + j) * n_p + i) << np.uint64(j)
            r0, r1 = m4r_128(tables, x0, x1)
            out[i, 0] = r0
            out[i, 1] = r1


@njit(cache=True)
def decode_128(v, n_p, tables, a):
    if n_p >= 64:
        stride = n_p // 64
        lo = np.zeros(64, np.uint64)
        hi = np.zeros(64, np.uint64)
        for t in range(stride):
            for i in range(64):
                r0, r1 = m4r_128(tables, v[t * 64 + i, 0], v[t * 64 + i, 1])
                lo[i] = r0
                hi[i] = r1
            transpose64(lo)
            transpose64(hi)
            for j in range(64):
                a[j * stride + t] = lo[j]
                a[(64 + j) * stride + t] = hi[j]
    else:
        for q in range(a.shape[0]):
            a[q] = ZERO
        for i in range(n_p):
            x0, x1 = m4r_128(tables, v[i, 0], v[i, 1])
            for j in range(128):
                bit = (x0 >> np.uint64(j)) & ONE if j < 64 else (x1 >> np.uint64(j - 64)) & ONE
                k = j * n_p + i
                a[k >> 6] |= bit << np.uint64(k & 63)


# --------------------------------------------------- GF(2)[x] word products

@njit(cache=True)
def naive_words(a, b, out, hw):
    """out ^= a * b (schoolbook); out must hold len(a) + len(b) words."""
    for i in range(a.shape[0]):
        x = a[i]
        if x == ZERO:
            continue
        for j in range(b.shape[0]):
            lo, hi = clmul(x, b[j], hw)
            out[i + j] ^= lo
            out[i + j + 1] ^= hi


KARATSUBA_BASE = 32


@njit(cache=True)
def _kara(a, b, out, hw):
    # len(a) == len(b) == n; out has 2n words and is zero on entry
    n = a.shape[0]
    if n <= KARATSUBA_BASE:
        naive_words(a, b, out, hw)
        return
    h = n // 2
    t = n - h
    a0 = a[:h]
    a1 = a[h:]
    b0 = b[:h]
    b1 = b[h:]
    z0 = np.zeros(2 * h, np.uint64)
    z2 = np.zeros(2 * t, np.uint64)
    _kara(a0, b0, z0, hw)
    _kara(a1, b1, z2, hw)
    sa = a1.copy()
    sb = b1.copy()
    sa[:h] ^= a0
    sb[:h] ^= b0
    z1 = np.zeros(2 * t, np.uint64)
    _kara(sa, sb, z1, hw)
    z1[: 2 * h] ^= z0
    z1 ^= z2
    out[: 2 * h] ^= z0
    out[2 * h : 2 * h + 2 * t] ^= z2
    out[h : h + 2 * t] ^= z1


@njit(cache=True)
def karatsuba_words(a, b, hw):
    n = max(a.shape[0], b.shape[0])
    aa = np.zeros(n, np.uint64)
    bb = np.zeros(n, np.uint64)
    aa[: a.shape[0]] = a
    bb[: b.shape[0]] = b
    out = np.zeros(2 * n, np.uint64)
    _kara(aa, bb, out, hw)
    return out
