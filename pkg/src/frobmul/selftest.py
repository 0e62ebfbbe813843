"""Invariant suites behind ``frobmul selftest``.

Each check raises AssertionError with a short reason; the runner collects one
result per named invariant.  ``quick`` samples, ``full`` adds the exhaustive
m=16 structure checks and larger multiplication sizes.
"""
import dataclasses
import time
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .fft_core import direct_eval_many, i_lch_butterfly, lch_butterfly, new_evalvec, plan_butterflies
from .frobenius_encode import (
    bit_transpose_block, cached_encode_matrix, decode, encode, enumerate_partition, frobenius_image,
    m4r_mat_vec, naive_mat_vec, partition_spec, virtual_butterfly,
)
from .gf_cantor import (
    FIELD_DEGREES, MODULI, build_field_params, frobenius_order, frobenius_order_of_basis, gf2_rank,
    gf_mul, gf_mul_bitserial, gf_sqr, is_irreducible, to_words,
)
from .multiplier import fp_polymul, frobenius_value_check, karatsuba_mul, naive_mul
from .poly_basis import BitPoly, basis_cvt, i_basis_cvt, novelpoly_reference

LEVELS = ("quick", "full")


@dataclass(frozen=True)
class SelftestConfig:
    level: str = "quick"
    seed: int = 0
    # test hook: flip one bit of the forward M4R encode table
    corrupt_encode_table: bool = False


@dataclass
class CheckResult:
    name: str
    ok: bool
    seconds: float
    detail: str = ""


def _rand_elem(rng, m):
    return int.from_bytes(rng.bytes(m // 8), "little")


def corrupted_encode_matrix(E):
    tabs = E.m4r_tables.copy()
    tabs[0, 1] ^= np.uint64(1)
    return dataclasses.replace(E, m4r_tables=tabs)


# ------------------------------------------------------------------ checks

def check_field_recurrence(cfg, rng):
    for m in FIELD_DEGREES:
        p = build_field_params(m)
        assert p.v[0] == 1, f"m={m}: v_0 != 1"
        for i in range(1, m):
            assert gf_sqr(p.v[i], m) ^ p.v[i] == p.v[i - 1], f"m={m}: v_{i}^2 + v_{i} != v_{i - 1}"
        assert gf2_rank(list(p.v)) == m, f"m={m}: Cantor basis is not independent"


def check_field_mul(cfg, rng):
    trials = 200 if cfg.level == "quick" else 2000
    for m in FIELD_DEGREES:
        for _ in range(trials):
            a, b = _rand_elem(rng, m), _rand_elem(rng, m)
            assert gf_mul(a, b, m) == gf_mul_bitserial(a, b, m), f"m={m}: gf_mul({a:#x}, {b:#x})"
            assert gf_sqr(a, m) == gf_mul(a, a, m), f"m={m}: gf_sqr({a:#x})"


def check_frobenius_order(cfg, rng):
    p = build_field_params(16)
    for i in range(1, 16):
        assert frobenius_order(p, p.v[i]) == frobenius_order_of_basis(i), f"Ord(v_{i})"


def check_basis_oracle(cfg, rng):
    for ln in range(0, 9):
        f = BitPoly.random(1 << ln, rng)
        g = basis_cvt(f.copy())
        assert novelpoly_reference(g.to_bits()) == f.to_int(), f"n={1 << ln}"


def check_basis_round_trip(cfg, rng):
    top = 16 if cfg.level == "quick" else 20
    for ln in range(1, top + 1):
        f = BitPoly.random(1 << ln, rng)
        assert i_basis_cvt(basis_cvt(f.copy())) == f, f"n=2^{ln}"


def check_butterfly_direct(cfg, rng):
    for m in FIELD_DEGREES:
        p = build_field_params(m)
        for l in range(0, 7):
            base = _rand_elem(rng, m) & ~((1 << l) - 1)
            plan = plan_butterflies(p, l, base)
            g = to_words([_rand_elem(rng, m) for _ in range(1 << l)], m)
            pts = to_words([base ^ u for u in range(1 << l)], m)
            want = direct_eval_many(g, pts, p)
            got = lch_butterfly(g.copy(), plan)
            assert np.array_equal(got, want), f"m={m}, l={l}"


def check_butterfly_round_trip(cfg, rng):
    for m in FIELD_DEGREES:
        p = build_field_params(m)
        for l in (1, 5, 12):
            plan = plan_butterflies(p, l, _rand_elem(rng, m) & ~((1 << l) - 1))
            v = new_evalvec(m, 1 << l)
            v[...] = rng.integers(0, 2**64, size=v.shape, dtype=np.uint64)
            if m == 16:
                v &= np.uint64(0xFFFF)
            w = i_lch_butterfly(lch_butterfly(v.copy(), plan), plan)
            assert np.array_equal(w, v), f"m={m}, l={l}"


def check_encode_round_trip(cfg, rng):
    for m in FIELD_DEGREES:
        E = cached_encode_matrix(m)
        if cfg.corrupt_encode_table:
            E = corrupted_encode_matrix(E)
        for l in (0, 3, 7, 12):
            if l >= m // 2:
                continue
            spec = partition_spec(m, l)
            a = BitPoly.random(spec.n, rng)
            assert decode(encode(a, spec, E), spec, E) == a, f"m={m}, l={l}"


def check_m4r(cfg, rng):
    for m in FIELD_DEGREES:
        E = cached_encode_matrix(m)
        for _ in range(200):
            x = _rand_elem(rng, m)
            for inv in (False, True):
                assert m4r_mat_vec(E, x, inv) == naive_mat_vec(E, x, inv), f"m={m}, inverse={inv}"


def check_transpose(cfg, rng):
    for _ in range(50):
        blk = rng.integers(0, 2**64, size=64, dtype=np.uint64)
        t = bit_transpose_block(blk)
        assert np.array_equal(bit_transpose_block(t[:, 0])[:, 0], blk), "transpose is not an involution"
        r, c = rng.integers(0, 64, size=2)
        assert (int(t[c, 0]) >> int(r)) & 1 == (int(blk[r]) >> int(c)) & 1, "transpose moved a bit"


def check_karatsuba(cfg, rng):
    for n in (1, 63, 64, 65, 1000, 5000):
        a, b = BitPoly.random(n, rng), BitPoly.random(n + 7, rng)
        assert karatsuba_mul(a, b) == naive_mul(a, b), f"karatsuba vs naive at {n} bits"


def check_multiply(cfg, rng):
    sizes = (1 << 8, 1 << 12, 3000, 1 << 16)
    if cfg.level == "full":
        sizes += (1 << 20,)
    for m in (64, 128):
        for n in sizes:
            a, b = BitPoly.random(n, rng), BitPoly.random(n, rng)
            assert fp_polymul(a, b, m) == karatsuba_mul(a, b), f"m={m}, {n} bits"


def check_frobenius_identity(cfg, rng):
    trials = 50 if cfg.level == "quick" else 500
    for m in FIELD_DEGREES:
        for _ in range(trials):
            a = BitPoly.random(int(rng.integers(1, 1025)), rng)
            assert frobenius_value_check(a, _rand_elem(rng, m), m), f"m={m}"


def check_m16_field(cfg, rng):
    assert is_irreducible(MODULI[16]), "m=16 modulus is reducible"
    p = build_field_params(16)
    a = rng.integers(0, 1 << 16, size=1 << 16, dtype=np.uint64)
    b = rng.integers(0, 1 << 16, size=1 << 16, dtype=np.uint64)
    out = np.empty_like(a)
    K.vec_mul_word(a, b, out, 16, p.red, False)
    for x, y, z in zip(a.tolist(), b.tolist(), out.tolist()):
        assert gf_mul_bitserial(x, y, 16) == z, f"gf_mul({x:#x}, {y:#x})"
    for x in range(1 << 16):
        y = x
        for _ in range(16):
            y = gf_sqr(y, 16)
        assert y == x, f"phi^16({x:#x}) != {x:#x}"


def check_m16_partition(cfg, rng):
    p = build_field_params(16)
    for l in range(0, 8):
        spec = partition_spec(16, l)
        its = enumerate_partition(spec, p)
        union = frozenset().union(*its)
        assert len(union) == 16 * spec.n_p, f"l={l}: |Omega| = {len(union)}"
        assert sum(len(s) for s in its) == len(union), f"l={l}: iterates overlap"
        assert frobenius_image(p, its[-1]) == its[0], f"l={l}: orbit does not close"
        v_l = frozenset(range(1 << l))
        assert frobenius_image(p, v_l) == v_l, f"l={l}: phi(V_l) != V_l"


def check_m16_virtual_butterfly(cfg, rng):
    p = build_field_params(16)
    E = cached_encode_matrix(16)
    if cfg.corrupt_encode_table:
        E = corrupted_encode_matrix(E)
    for l in range(0, 8):
        spec = partition_spec(16, l)
        for _ in range(20):
            a = BitPoly.random(spec.n, rng)
            assert np.array_equal(encode(a, spec, E), virtual_butterfly(a, spec, p)), f"l={l}"


CHECKS = {
    "field.cantor_recurrence": (check_field_recurrence, "quick"),
    "field.mul_matches_bitserial": (check_field_mul, "quick"),
    "field.frobenius_order_of_basis": (check_frobenius_order, "quick"),
    "basis.novelpoly_oracle": (check_basis_oracle, "quick"),
    "basis.round_trip": (check_basis_round_trip, "quick"),
    "butterfly.direct_eval": (check_butterfly_direct, "quick"),
    "butterfly.round_trip": (check_butterfly_round_trip, "quick"),
    "encode.decode_round_trip": (check_encode_round_trip, "quick"),
    "encode.m4r_matches_naive": (check_m4r, "quick"),
    "encode.transpose_involution": (check_transpose, "quick"),
    "multiply.karatsuba_matches_naive": (check_karatsuba, "quick"),
    "multiply.fft_matches_karatsuba": (check_multiply, "quick"),
    "multiply.frobenius_identity": (check_frobenius_identity, "quick"),
    "m16.exhaustive_field": (check_m16_field, "full"),
    "m16.frobenius_partition": (check_m16_partition, "full"),
    "m16.encode_virtual_butterfly": (check_m16_virtual_butterfly, "full"),
}


def run_selftest(cfg=SelftestConfig(), report=None):
    """Run every check enabled at ``cfg.level``; ``report`` gets each CheckResult as it finishes."""
    if cfg.level not in LEVELS:
        raise ValueError(f"unknown selftest level {cfg.level!r}")
    results = []
    for i, (name, (fn, level)) in enumerate(CHECKS.items()):
        if level == "full" and cfg.level != "full":
            continue
        rng = np.random.default_rng([cfg.seed, i])
        t0 = time.perf_counter()
        try:
            fn(cfg, rng)
            res = CheckResult(name, True, time.perf_counter() - t0)
        except AssertionError as exc:
            res = CheckResult(name, False, time.perf_counter() - t0, str(exc))
        results.append(res)
        if report is not None:
            report(res)
    return results
