import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from frobmul import _kernels as K
from frobmul.fft_core import (
    direct_eval, direct_eval_many, i_lch_butterfly, lch_butterfly, new_evalvec, plan_butterflies,
)
from frobmul.gf_cantor import FIELD_DEGREES, build_field_params, cantor_to_poly, from_words, subspace_eval, to_words


def rand_vec(rng, m, n):
    v = new_evalvec(m, n)
    v[...] = rng.integers(0, 2**64, size=v.shape, dtype=np.uint64)
    if m == 16:
        v &= np.uint64(0xFFFF)
    return v


def rand_base(rng, m, l):
    return int.from_bytes(rng.bytes(m // 8), "little") & ~((1 << l) - 1)


def test_plan_examples():
    p = build_field_params(64)
    assert plan_butterflies(p, 0, 0).mults.size == 0
    plan = plan_butterflies(p, 1, 0)
    assert plan.multiplier(0, 0) == 0


@pytest.mark.parametrize("m", FIELD_DEGREES)
def test_plan_invariant(m, rng):
    p = build_field_params(m)
    l = 6
    base = rand_base(rng, m, l)
    plan = plan_butterflies(p, l, base)
    for i in range(l):
        for b in range(1 << (l - 1 - i)):
            block_base = b << (i + 1)
            assert plan.multiplier(i, b) == cantor_to_poly(p, subspace_eval(i, base ^ block_base))


@pytest.mark.parametrize("m", FIELD_DEGREES)
def test_top_layers_at_partition_base(m):
    # layer l + k at base v_{l+m/2} has multiplier v_{m/2-k}
    p = build_field_params(m)
    l = 3
    plan = plan_butterflies(p, l + p.l_m, 1 << (l + m // 2))
    for k in range(p.l_m):
        assert plan.multiplier(l + k, 0) == p.v[m // 2 - k]


def test_l0_and_l1_examples():
    p = build_field_params(64)
    v = to_words([42], 64)
    assert from_words(lch_butterfly(v, plan_butterflies(p, 0, 0))) == [42]
    v = to_words([5, 9], 64)
    plan = plan_butterflies(p, 1, 0)
    assert from_words(lch_butterfly(v, plan)) == [5, 5 ^ 9]
    assert from_words(i_lch_butterfly(to_words([5, 9], 64), plan)) == [5, 5 ^ 9]


@pytest.mark.parametrize("m", FIELD_DEGREES)
def test_direct_eval_examples(m, rng):
    p = build_field_params(m)
    c = int.from_bytes(rng.bytes(m // 8), "little")
    pt = int.from_bytes(rng.bytes(m // 8), "little")
    assert direct_eval([c, 0, 0, 0], pt, p) == c
    assert direct_eval([0, 1], 1, p) == 1


@pytest.mark.parametrize("m", FIELD_DEGREES)
@pytest.mark.parametrize("l", range(0, 7))
def test_butterfly_matches_direct_eval_all_indices(m, l, rng):
    p = build_field_params(m)
    base = rand_base(rng, m, l)
    g = rand_vec(rng, m, 1 << l)
    got = from_words(lch_butterfly(g.copy(), plan_butterflies(p, l, base)))
    coeffs = from_words(g)
    want = [direct_eval(coeffs, base ^ u, p) for u in range(1 << l)]
    assert got == want


@pytest.mark.parametrize("m", FIELD_DEGREES)
@pytest.mark.parametrize("l", [8, 10, 12])
def test_butterfly_matches_direct_eval_sampled(m, l, rng):
    p = build_field_params(m)
    base = rand_base(rng, m, l)
    g = rand_vec(rng, m, 1 << l)
    got = lch_butterfly(g.copy(), plan_butterflies(p, l, base))
    idx = rng.integers(0, 1 << l, size=16)
    pts = to_words([base ^ int(u) for u in idx], m)
    assert np.array_equal(direct_eval_many(g, pts, p), got[idx])


@pytest.mark.parametrize("m", FIELD_DEGREES)
def test_direct_eval_many_matches_scalar(m, rng):
    p = build_field_params(m)
    g = rand_vec(rng, m, 8)
    pts = [int.from_bytes(rng.bytes(m // 8), "little") for _ in range(5)]
    assert from_words(direct_eval_many(g, to_words(pts, m), p)) == [direct_eval(from_words(g), x, p) for x in pts]


@pytest.mark.parametrize("m", FIELD_DEGREES)
@pytest.mark.parametrize("l", [1, 4, 9, 12])
def test_round_trip(m, l, rng):
    p = build_field_params(m)
    plan = plan_butterflies(p, l, rand_base(rng, m, l))
    v = rand_vec(rng, m, 1 << l)
    assert np.array_equal(i_lch_butterfly(lch_butterfly(v.copy(), plan), plan), v)


@pytest.mark.parametrize("m", FIELD_DEGREES)
def test_zero_and_constant(m, rng):
    p = build_field_params(m)
    l = 7
    plan = plan_butterflies(p, l, 0)
    z = new_evalvec(m, 1 << l)
    assert not lch_butterfly(z.copy(), plan).any()
    assert not i_lch_butterfly(z.copy(), plan).any()
    c = z.copy()
    c[0] = rand_vec(rng, m, 1)[0]
    out = lch_butterfly(c.copy(), plan)
    assert (out == c[0]).all()


@pytest.mark.parametrize("m", FIELD_DEGREES)
@pytest.mark.parametrize("batch_log", [1, 3, 6, 99])
def test_cache_batching_bit_exact(m, batch_log, rng):
    # batch_log 99 is the plain layer-by-layer order
    p = build_field_params(m)
    l = 10
    base = rand_base(rng, m, l)
    v = rand_vec(rng, m, 1 << l)
    ref = lch_butterfly(v.copy(), plan_butterflies(p, l, base, batch_log=99))
    plan = plan_butterflies(p, l, base, batch_log=batch_log)
    assert np.array_equal(lch_butterfly(v.copy(), plan), ref)
    assert np.array_equal(i_lch_butterfly(ref.copy(), plan), v)


@pytest.mark.parametrize("m", FIELD_DEGREES)
def test_portable_path_matches_hardware(m, rng):
    if not K.HAVE_PCLMUL:
        pytest.skip("no carryless multiply instruction")
    p = build_field_params(m)
    plan = plan_butterflies(p, 9, rand_base(rng, m, 9))
    v = rand_vec(rng, m, 1 << 9)
    assert np.array_equal(lch_butterfly(v.copy(), plan, hw=False), lch_butterfly(v.copy(), plan, hw=True))


@given(st.integers(0, 8), st.integers(0, 2**32))
def test_linearity(l, seed):
    rng = np.random.default_rng(seed)
    p = build_field_params(64)
    plan = plan_butterflies(p, l, rand_base(rng, 64, l))
    a, b = rand_vec(rng, 64, 1 << l), rand_vec(rng, 64, 1 << l)
    assert np.array_equal(lch_butterfly(a ^ b, plan), lch_butterfly(a.copy(), plan) ^ lch_butterfly(b.copy(), plan))


def test_length_mismatch_rejected():
    p = build_field_params(64)
    plan = plan_butterflies(p, 3, 0)
    with pytest.raises(ValueError):
        lch_butterfly(new_evalvec(64, 4), plan)
    with pytest.raises(ValueError):
        i_lch_butterfly(new_evalvec(128, 8), plan)
