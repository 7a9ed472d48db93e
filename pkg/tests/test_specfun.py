import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from noncoh_cap.specfun import (AccuracyPolicy, euler_gamma, g_lemma, gamma_upper0,
                                gamma_upper0_cf, gamma_upper0_series, log_gamma)


def quad(f, a, b, points=None):
    val, _ = integrate.quad(f, a, b, epsabs=1e-14, epsrel=1e-13, limit=400, points=points)
    return val


def g_quad(a):
    f = lambda v: math.exp(-v) * math.log(a + v)
    return quad(f, 0, 1, points=[a] if a < 1 else None) + quad(f, 1, math.inf)


# -- Euler-Mascheroni ------------------------------------------------------

def test_euler_gamma_quadrature():
    f = lambda t: math.exp(-t) * math.log(t)
    oracle = -(quad(f, 0, 1) + quad(f, 1, math.inf))
    assert euler_gamma() == pytest.approx(oracle, abs=1e-13)
    assert euler_gamma() == pytest.approx(0.5772156649015329, abs=1e-16)


def test_euler_gamma_harmonic_richardson():
    # H_n - log n = γ + 1/(2n) - 1/(12 n^2) + ...; two Richardson passes
    def d(n):
        return math.fsum(1.0 / k for k in range(1, n + 1)) - math.log(n)
    n = 20000
    r1 = 2 * d(2 * n) - d(n)
    r1b = 2 * d(4 * n) - d(2 * n)
    r2 = (4 * r1b - r1) / 3
    assert euler_gamma() == pytest.approx(r2, abs=1e-12)


# -- log Gamma -------------------------------------------------------------

@pytest.mark.parametrize("x, expected", [(1.0, 0.0), (4.0, math.log(6.0)),
                                         (2.0, 0.0)])
def test_log_gamma_exact(x, expected):
    assert log_gamma(x) == pytest.approx(expected, abs=1e-15)


def test_log_gamma_half_quadrature():
    # ∫ t^{-1/2} e^{-t} dt; substitute t = u^2 to remove the singularity: 2 ∫ e^{-u^2} du
    oracle = math.log(2 * quad(lambda u: math.exp(-u * u), 0, math.inf))
    assert log_gamma(0.5) == pytest.approx(oracle, rel=1e-12)
    assert log_gamma(0.5) == pytest.approx(0.5723649429247001, rel=1e-14)


@pytest.mark.parametrize("x", np.logspace(-1, 2, 25))
def test_log_gamma_recurrence(x):
    assert log_gamma(x + 1) - log_gamma(x) == pytest.approx(math.log(x), abs=1e-12)


@pytest.mark.parametrize("x", [0.0, -1.0, -0.5])
def test_log_gamma_domain(x):
    with pytest.raises(ValueError):
        log_gamma(x)


# -- Γ(0, a) ---------------------------------------------------------------

def test_gamma_upper0_at_one():
    oracle = quad(lambda t: math.exp(-t) / t, 1, math.inf)
    assert gamma_upper0(1.0) == pytest.approx(oracle, abs=1e-12)
    assert gamma_upper0(1.0) == pytest.approx(0.21938393439552026, abs=1e-14)


def test_gamma_upper0_small_argument():
    a = 1e-8
    assert gamma_upper0(a) == pytest.approx(-euler_gamma() - math.log(a) + a, abs=1e-12)
    assert gamma_upper0(a) == pytest.approx(17.843465089, abs=1e-8)


def test_gamma_upper0_large_argument_bound():
    a = 50.0
    val = gamma_upper0(a)
    assert 0 < val < math.exp(-a) / a
    # e^{-a}/(a+1) < E1(a) as well
    assert val > math.exp(-a) / (a + 1)


@pytest.mark.parametrize("a", [1e-8, 1e-4, 0.01, 0.3, 0.9, 1.5, 3.0, 10.0, 30.0])
def test_gamma_upper0_quadrature(a):
    f = lambda t: math.exp(-t) / t
    # log substitution t = e^s keeps quad happy near a = 0
    oracle = quad(lambda s: math.exp(-math.exp(s)), math.log(a), math.log(a) + 5) \
        + quad(f, a * math.e ** 5, math.inf)
    assert gamma_upper0(a) == pytest.approx(oracle, abs=1e-12)


def test_gamma_upper0_seam():
    assert gamma_upper0_series(1.0) == pytest.approx(gamma_upper0_cf(1.0), abs=1e-12)
    left, right = gamma_upper0(1.0), gamma_upper0(np.nextafter(1.0, 2.0))
    assert abs(left - right) < 1e-12


@pytest.mark.parametrize("a", [0.0, -1.0])
def test_gamma_upper0_domain(a):
    with pytest.raises(ValueError):
        gamma_upper0(a)


def test_accuracy_policy_validation():
    with pytest.raises(ValueError):
        AccuracyPolicy(abs_tol=0.0)
    with pytest.raises(ValueError):
        AccuracyPolicy(max_terms=0)
    coarse = AccuracyPolicy(abs_tol=1e-4, max_terms=5)
    assert gamma_upper0(0.5, coarse) == pytest.approx(gamma_upper0(0.5), abs=1e-3)


# -- g(a) ------------------------------------------------------------------

def test_g_at_zero_is_minus_gamma():
    assert g_lemma(0.0) == -euler_gamma()


def test_g_limit_at_zero():
    assert abs(g_lemma(1e-8) + euler_gamma()) <= 1e-6
    assert abs(g_lemma(1e-12) + euler_gamma()) <= 1e-10


def test_g_at_one():
    oracle = quad(lambda v: math.exp(-v) * math.log1p(v), 0, math.inf)
    assert g_lemma(1.0) == pytest.approx(oracle, abs=1e-12)
    assert g_lemma(1.0) == pytest.approx(math.e * gamma_upper0(1.0), abs=1e-14)


def test_g_at_ten():
    val = g_lemma(10.0)
    assert val == pytest.approx(g_quad(10.0), abs=1e-12)
    assert 0 < val - math.log(10.0) < 0.1


@pytest.mark.parametrize("a", [0.01, 0.5, 1.0, 5.0, 20.0])
def test_g_integral_identity(a):
    assert abs(g_lemma(a) - g_quad(a)) <= 1e-9


@pytest.mark.parametrize("a", [0.1, 1.0, 10.0])
def test_g_derivative(a):
    d = 1e-5
    fd = (g_lemma(a + d) - g_lemma(a - d)) / (2 * d)
    assert fd == pytest.approx(math.exp(a) * gamma_upper0(a), abs=1e-6)


@given(st.floats(0, 100), st.floats(0, 100))
def test_g_monotone(a1, a2):
    lo, hi = sorted((a1, a2))
    if hi - lo < 1e-6 * max(1.0, hi):
        return
    assert g_lemma(lo) < g_lemma(hi)


def test_g_large_a_no_overflow():
    a = 800.0
    # e^a Γ(0,a) ~ 1/a - 1/a^2
    assert g_lemma(a) == pytest.approx(math.log(a) + 1 / a - 1 / a ** 2, abs=1e-8)


def test_g_domain():
    with pytest.raises(ValueError):
        g_lemma(-1e-3)
