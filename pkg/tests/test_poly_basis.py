import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from frobmul import _kernels as K
from frobmul.poly_basis import (
    BitPoly, _cvt_steps, basis_cvt, basis_cvt_reference, conversion_program, i_basis_cvt, novelpoly_reference,
)


@st.composite
def pow2_polys(draw, max_log=12):
    ln = draw(st.integers(0, max_log))
    n = 1 << ln
    return BitPoly.from_int(draw(st.integers(0, (1 << n) - 1)), n)


def test_small_examples():
    f = BitPoly.from_bits([1, 1])
    assert basis_cvt(f.copy()) == f
    g = basis_cvt(BitPoly.from_bits([0, 1, 0, 1]))
    assert list(g.to_bits()) == [0, 0, 1, 1]
    assert list(i_basis_cvt(g).to_bits()) == [0, 1, 0, 1]


@pytest.mark.parametrize("bits", [[f0, f1, f2, f3] for f0 in (0, 1) for f1 in (0, 1) for f2 in (0, 1) for f3 in (0, 1)])
def test_n4_table(bits):
    f0, f1, f2, f3 = bits
    g = basis_cvt(BitPoly.from_bits(bits))
    assert list(g.to_bits()) == [f0, f1 ^ f2 ^ f3, f2 ^ f3, f3]


def test_zero_stays_zero():
    z = BitPoly.zeros(1 << 14)
    assert basis_cvt(z.copy()) == z


@given(pow2_polys(max_log=8))
def test_matches_novelpoly_oracle(f):
    g = basis_cvt(f.copy())
    assert novelpoly_reference(g.to_bits()) == f.to_int()


@given(pow2_polys())
def test_matches_unfused_reference(f):
    assert basis_cvt(f.copy()).to_int() == basis_cvt_reference(f.to_int(), f.n_bits)


@given(pow2_polys())
def test_round_trip(f):
    assert i_basis_cvt(basis_cvt(f.copy())) == f
    assert basis_cvt(i_basis_cvt(f.copy())) == f


@given(st.integers(0, 10), st.data())
def test_linear(ln, data):
    n = 1 << ln
    a = BitPoly.from_int(data.draw(st.integers(0, (1 << n) - 1)), n)
    b = BitPoly.from_int(data.draw(st.integers(0, (1 << n) - 1)), n)
    assert basis_cvt(a ^ b) == basis_cvt(a.copy()) ^ basis_cvt(b.copy())


@pytest.mark.parametrize("ln", [14, 16, 18, 20])
def test_round_trip_large(ln, rng):
    f = BitPoly.random(1 << ln, rng)
    g = basis_cvt(f.copy())
    assert g != f
    assert i_basis_cvt(g) == f


@pytest.mark.parametrize("n", [2, 4, 64, 1 << 10, 1 << 16])
def test_steps_only_move_high_bits_down(n):
    for dst, src, length, period in _cvt_steps(n, 1):
        assert dst + length <= src
        assert src + length <= period <= n
        assert n % period == 0


def test_program_groups_short_periods():
    prog = conversion_program(1 << 16)
    assert prog.masks.shape[1] == 4
    assert (prog.ops[:, 0] == 1).any()
    assert prog.masks.shape[0] == sum(int(r[2]) for r in prog.ops if r[0] == 1)


@pytest.mark.parametrize("ln", [16, 20, 22])
@pytest.mark.parametrize("block_log", [10, 12, 14])
def test_blocked_schedules_match_plain(ln, block_log, rng):
    # small blocks push the large-period ops through the row and column paths
    n = 1 << ln
    prog = conversion_program(n)
    w = BitPoly.random(n, rng).words
    plain, blocked = w.copy(), w.copy()
    K.run_conversion(plain, n, prog.ops, prog.masks, prog.shifts, False, 1 << 40)
    K.run_conversion(blocked, n, prog.ops, prog.masks, prog.shifts, False, 1 << block_log)
    assert np.array_equal(plain, blocked)
    K.run_conversion(blocked, n, prog.ops, prog.masks, prog.shifts, True, 1 << block_log)
    assert np.array_equal(blocked, w)


@pytest.mark.parametrize("n", [0, 3, 6, 100])
def test_non_pow2_rejected(n):
    with pytest.raises(ValueError):
        basis_cvt(BitPoly.zeros(n))
    with pytest.raises(ValueError):
        i_basis_cvt(BitPoly.zeros(n))


def test_bitpoly_packing():
    p = BitPoly.from_int(0b1011, 70)
    assert p.words.shape == (2,)
    assert p.to_int() == 0b1011
    assert p.degree() == 3
    assert BitPoly.from_bytes(b"\x01\x00\x00") == BitPoly.from_int(1)
    assert BitPoly.from_bytes(b"\x00\x01").to_bytes() == b"\x00\x01"
    assert BitPoly.from_bytes(b"").n_bits == 0


def test_bitpoly_invariants():
    with pytest.raises(ValueError):
        BitPoly(np.array([1 << 5], dtype=np.uint64), 3)
    with pytest.raises(ValueError):
        BitPoly(np.zeros(3, dtype=np.uint64), 64)
    with pytest.raises(ValueError):
        BitPoly.from_int(8, 3)


@given(st.integers(0, 1 << 300), st.integers(0, 400))
def test_resize_truncates_high_bits(v, n):
    assert BitPoly.from_int(v).resized(n).to_int() == v & ((1 << n) - 1)


@given(st.lists(st.integers(0, 1), max_size=300))
def test_bits_round_trip(bits):
    assert list(BitPoly.from_bits(bits).to_bits()) == bits
