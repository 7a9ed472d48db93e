import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from noncoh_cap import asymptotics as asy
from noncoh_cap import channel as ch

GAMMA = 0.5772156649015329


@pytest.mark.parametrize("n, q, expected", [(4, 1, 0.75), (2, 1, 0.5), (3, 3, 0.0), (7, 7, 0.0)])
def test_prelog(n, q, expected):
    assert asy.prelog(n, q) == expected


@pytest.mark.parametrize("n, q", [(2, 0), (2, 3)])
def test_prelog_range(n, q):
    with pytest.raises(ValueError):
        asy.prelog(n, q)


def test_rank_one_value():
    # 0.5 (log 1e6 + log 2 - γ - 1) - log Γ(2)/2
    expected = 0.5 * (math.log(1e6) + math.log(2) - GAMMA - 1)
    assert asy.rank_one_asymptote(2, 1e6) == pytest.approx(expected, abs=1e-14)
    assert asy.rank_one_asymptote(2, 1e6) == pytest.approx(6.465721, abs=5e-7)


def test_rank_one_n4_value():
    expected = 0.75 * (math.log(50.0) + math.log(4) - GAMMA - 1) - math.log(6) / 4
    assert asy.rank_one_asymptote(4, 50.0) == pytest.approx(expected, abs=1e-14)


@pytest.mark.parametrize("n", [2, 3, 5, 10])
def test_rank_one_slope(n):
    d = asy.rank_one_asymptote(n, 123.0 * math.e) - asy.rank_one_asymptote(n, 123.0)
    assert d == pytest.approx((n - 1) / n, abs=1e-13)
    assert d == pytest.approx(asy.prelog(n, 1), abs=1e-13)


def test_rank_one_rejects():
    with pytest.raises(ValueError):
        asy.rank_one_asymptote(1, 10.0)
    with pytest.raises(ValueError):
        asy.rank_one_asymptote(2, 0.0)


def test_iid_at_e_to_e():
    assert asy.full_rank_iid_asymptote(math.e ** math.e) == pytest.approx(-GAMMA, abs=1e-14)


def test_iid_at_1e6():
    assert asy.full_rank_iid_asymptote(1e6) == pytest.approx(
        math.log(math.log(1e6)) - GAMMA - 1, abs=1e-15)
    assert asy.full_rank_iid_asymptote(1e6) == pytest.approx(1.048576, abs=1e-6)


@pytest.mark.parametrize("snr", [3.0, 10.0, 1e3, 1e8])
def test_iid_doubling(snr):
    d = asy.full_rank_iid_asymptote(2 * snr) - asy.full_rank_iid_asymptote(snr)
    assert d == pytest.approx(math.log(math.log(2 * snr) / math.log(snr)), abs=1e-14)
    assert d < math.log(2) / math.log(snr)


def test_iid_floor():
    with pytest.raises(ValueError):
        asy.full_rank_iid_asymptote(2.9)
    assert math.isfinite(asy.full_rank_iid_asymptote(3.0))


def test_corr_identity_equals_iid():
    for r in (ch.make_iid_corr(3), ch.make_circulant_corr(4, (1, 1, 1, 1))):
        assert asy.full_rank_corr_asymptote(1e5, r) == asy.full_rank_iid_asymptote(1e5)


def test_corr_correction_value():
    r = ch.corr_from_matrix([[1, 0.5], [0.5, 1]])
    d = asy.full_rank_corr_asymptote(1e4, r) - asy.full_rank_iid_asymptote(1e4)
    assert d == pytest.approx(-0.5 * math.log(0.75), abs=1e-14)
    assert d == pytest.approx(0.143841, abs=5e-7)


def test_corr_rejects_rank_deficient():
    with pytest.raises(ValueError):
        asy.full_rank_corr_asymptote(10.0, ch.make_circulant_corr(4, (3, 1)))


@given(st.lists(st.floats(0.05, 20), min_size=2, max_size=6))
def test_corr_correction_nonnegative(taps):
    r = ch.make_circulant_corr(len(taps), taps)
    d = asy.full_rank_corr_asymptote(100.0, r) - asy.full_rank_iid_asymptote(100.0)
    assert d >= -1e-12


def test_full_rank_zero_prelog():
    r = ch.make_circulant_corr(3, (2, 1, 1))
    for f in (asy.full_rank_iid_asymptote, lambda s: asy.full_rank_corr_asymptote(s, r)):
        ratios = [(f(s * s) - f(s)) / math.log(s) for s in (1e2, 1e10, 1e100)]
        assert ratios[0] > ratios[1] > ratios[2] > 0
        assert ratios[2] < 0.01


@given(st.floats(3, 1e12), st.floats(3, 1e12), st.integers(2, 8))
def test_monotone_in_snr(s1, s2, n):
    lo, hi = sorted((s1, s2))
    if hi <= lo * (1 + 1e-9):
        return
    assert asy.rank_one_asymptote(n, lo) < asy.rank_one_asymptote(n, hi)
    assert asy.full_rank_iid_asymptote(lo) < asy.full_rank_iid_asymptote(hi)
