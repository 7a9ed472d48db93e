"""Special functions used by the capacity closed forms.

Everything here works on real scalars. The exponential integral
``Γ(0, a) = E1(a)`` is evaluated with a convergent power series for
``a <= 1`` and a modified-Lentz continued fraction above; ``g_lemma``
reuses the continued fraction in scaled form so that ``e^a Γ(0, a)`` never
overflows for large ``a``.
"""

from dataclasses import dataclass
import math

__all__ = [
    "AccuracyPolicy",
    "DEFAULT_POLICY",
    "EULER_GAMMA",
    "euler_gamma",
    "log_gamma",
    "gamma_upper0",
    "g_lemma",
    "gamma_upper0_series",
    "gamma_upper0_cf",
]

EULER_GAMMA = 0.57721566490153286061

# switch point between the series and the continued fraction
_SPLIT = 1.0
_TINY = 1e-300


@dataclass(frozen=True)
class AccuracyPolicy:
    """Stopping rule for the iterative special-function algorithms.

    Parameters
    ----------
    abs_tol : float
        Stop when the last correction falls below this (relative to the
        running value for the continued fraction).
    max_terms : int
        Hard cap on the number of series terms / continued-fraction levels.
    """

    abs_tol: float = 1e-16
    max_terms: int = 500

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")


DEFAULT_POLICY = AccuracyPolicy()


def euler_gamma():
    """Return the Euler-Mascheroni constant."""
    return EULER_GAMMA


def log_gamma(x):
    """Natural log of the Gamma function for real ``x > 0``.

    Delegates to :func:`math.lgamma`, which is accurate to a few ulps on
    the positive axis.
    """
    x = float(x)
    if not x > 0:
        raise ValueError(f"log_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)


def _series_tail(a, policy):
    # Σ_{k>=1} (-a)^k / (k k!)
    term = 1.0
    total = 0.0
    for k in range(1, policy.max_terms + 1):
        term *= -a / k
        contrib = term / k
        total += contrib
        if abs(contrib) < policy.abs_tol * max(1.0, abs(total)):
            break
    return total


def gamma_upper0_series(a, policy=DEFAULT_POLICY):
    """``Γ(0, a)`` from ``-γ - log a - Σ_{k>=1} (-a)^k / (k k!)``.

    Converges for every ``a > 0`` but loses digits to cancellation once
    ``a`` is much larger than 1.
    """
    return -EULER_GAMMA - math.log(a) - _series_tail(a, policy)


def _scaled_cf(a, policy=DEFAULT_POLICY):
    """``e^a Γ(0, a)`` by modified Lentz on the even contraction.

    ``e^a E1(a) = 1/(a+1- 1/(a+3- 4/(a+5- ...)))``
    """
    b = a + 1.0
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, policy.max_terms + 1):
        an = -float(i * i)
        b += 2.0
        d = 1.0 / (an * d + b)
        c = b + an / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < policy.abs_tol:
            break
    return h


def gamma_upper0_cf(a, policy=DEFAULT_POLICY):
    """``Γ(0, a)`` from the continued fraction; intended for ``a >= 1``."""
    return math.exp(-a) * _scaled_cf(a, policy)


def gamma_upper0(a, policy=DEFAULT_POLICY):
    """Upper incomplete Gamma function at order zero.

    ``Γ(0, a) = ∫_a^∞ e^{-t}/t dt``, the exponential integral ``E1(a)``.

    Parameters
    ----------
    a : float
        Lower integration limit, ``a > 0``.
    policy : AccuracyPolicy, optional
        Convergence controls.

    Returns
    -------
    float
    """
    a = float(a)
    if not a > 0:
        raise ValueError(f"gamma_upper0 requires a > 0, got {a!r}")
    if a <= _SPLIT:
        return gamma_upper0_series(a, policy)
    return gamma_upper0_cf(a, policy)


def g_lemma(a, policy=DEFAULT_POLICY):
    """``g(a) = e^a Γ(0, a) + log a = E[log(a + |z|^2)]``, ``z ~ CN(0, 1)``.

    Monotonically increasing on ``a >= 0`` with ``g(0) = -γ`` (the
    continuous extension, returned exactly).

    >>> round(g_lemma(1.0), 12)
    0.596347362323
    """
    a = float(a)
    if a < 0 or math.isnan(a):
        raise ValueError(f"g_lemma requires a >= 0, got {a!r}")
    if a == 0.0:
        return -EULER_GAMMA
    if a <= _SPLIT:
        # e^a (-γ - log a - S) + log a = -e^a(γ + S) - (e^a - 1) log a
        s = _series_tail(a, policy)
        return -math.exp(a) * (EULER_GAMMA + s) - math.expm1(a) * math.log(a)
    return _scaled_cf(a, policy) + math.log(a)
