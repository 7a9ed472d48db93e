"""Finite-SNR capacity bounds.

* sphere-input lower bound for the rank-one channel,
* duality upper bound for the rank-one channel under an input-norm floor
  ``||x||^2 >= rho0`` (escape to infinity),
* duality upper bound for memoryless (``R = I``) fading,
* the isotropic Gamma-norm output density used by both upper bounds, and a
  Monte-Carlo evaluator of the duality bound ``E_P[D(W(.|x) || Q)]`` for
  arbitrary input laws.

All values are nats per channel use.
"""

from dataclasses import dataclass, asdict
import math

import numpy as np

from . import channel as ch
from .specfun import EULER_GAMMA, g_lemma, log_gamma
from .streams import run_chunked

__all__ = [
    "BoundValue",
    "BoundConfig",
    "OutputDensityParams",
    "UPPER_RANK_ONE_NOTE",
    "UPPER_MEMORYLESS_NOTE",
    "MEMORYLESS_MIN_SNR",
    "db_to_snr",
    "snr_to_db",
    "default_rho0",
    "output_logdensity",
    "sample_output_density",
    "rank_one_lower_bound",
    "rank_one_upper_bound",
    "duality_gap",
    "memoryless_alpha",
    "memoryless_upper_bound",
    "sphere_input",
    "mc_duality_upper_bound",
]

UPPER_RANK_ONE_NOTE = ("upper bound on rho0-constrained capacity; "
                       "asymptotic upper bound on C(rho)")
UPPER_MEMORYLESS_NOTE = "loose by 1 nat asymptotically"
MEMORYLESS_MIN_SNR = 3.0
_LOG_PI = math.log(math.pi)


def db_to_snr(snr_db):
    return 10.0 ** (snr_db / 10.0)


def snr_to_db(snr):
    return 10.0 * math.log10(snr)


@dataclass(frozen=True)
class BoundValue:
    """A bound or asymptote, tagged with what it is and where it was evaluated."""

    kind: str
    nats_per_use: float
    snr: float = None
    n: int = None
    q: int = None
    rho0: float = None
    alpha: float = None
    stderr: float = None
    note: str = None

    def __float__(self):
        return float(self.nats_per_use)

    def to_dict(self):
        d = asdict(self)
        snr = d.pop("snr")
        out = {"kind": d.pop("kind"), "nats_per_use": d.pop("nats_per_use"),
               "snr_db": None if snr is None else snr_to_db(snr)}
        out.update(d)
        if out["stderr"] is None:
            del out["stderr"]
        if out["note"] is None:
            del out["note"]
        return out


@dataclass(frozen=True)
class BoundConfig:
    """Input-norm floor and Monte-Carlo settings for the upper bounds."""

    rho0: float = 1.0
    mc_samples: int = 100_000
    seed: int = 0

    def __post_init__(self):
        if not self.rho0 >= 0:
            raise ValueError("rho0 must be >= 0")
        if self.mc_samples < 1:
            raise ValueError("mc_samples must be >= 1")


def default_rho0(snr):
    """``sqrt(ρ)``: grows without bound while ``rho0/ρ -> 0``."""
    return math.sqrt(snr)


@dataclass(frozen=True)
class OutputDensityParams:
    """Isotropic output law on ``C^N`` with ``||y||^2 ~ Gamma(alpha, scale=beta)``."""

    n: int
    alpha: float
    beta: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not (self.alpha > 0 and self.beta > 0):
            raise ValueError("alpha and beta must be positive")

    @classmethod
    def for_snr(cls, n, snr, alpha=1.0):
        """Tie the scale to the SNR: ``beta = N (ρ + 1) / alpha``."""
        return cls(n=n, alpha=alpha, beta=n * (snr + 1.0) / alpha)


def output_logdensity(y, p):
    """Log-density of :class:`OutputDensityParams` at ``y`` (shape ``(..., N)``).

    ``log[Γ(N) / (π^N β^α Γ(α))] + (α - N) log||y||^2 - ||y||^2 / β``
    """
    y = np.asarray(y, dtype=complex)
    if y.shape[-1] != p.n:
        raise ValueError(f"y has length {y.shape[-1]}, expected {p.n}")
    s = np.sum(np.abs(y) ** 2, axis=-1)
    n, a, b = p.n, p.alpha, p.beta
    const = log_gamma(n) - n * _LOG_PI - a * math.log(b) - log_gamma(a)
    if a == n:
        return const - s / b
    if np.any(s == 0) and a < n:
        raise ValueError("density is singular at y = 0 when alpha < n")
    with np.errstate(divide="ignore"):
        return const + (a - n) * np.log(s) - s / b


def sample_output_density(p, rng, size):
    """Draw from :class:`OutputDensityParams`: uniform direction times ``sqrt(G)``."""
    z = ch.crandn(rng, (size, p.n))
    u = z / np.linalg.norm(z, axis=-1, keepdims=True)
    g = rng.gamma(p.alpha, p.beta, size=size)
    return u * np.sqrt(g)[:, None]


def _check_n(n):
    if int(n) != n or n < 2:
        raise ValueError(f"rank-one bounds need integer n >= 2, got {n!r}")
    return int(n)


def rank_one_lower_bound(n, snr):
    """Mutual information of the sphere input ``x = sqrt(Nρ) x_hat``, lower-bounded.

    Uses ``h(y) >= h(h x)`` and the exact conditional entropy
    ``N log(πe) + log(1 + Nρ)``; valid at every SNR.
    """
    n = _check_n(n)
    snr = float(snr)
    if not snr > 0:
        raise ValueError("snr must be positive")
    h_noiseless = (n * math.log(n * snr) + 1.0 + n * _LOG_PI - log_gamma(n)
                   - (n - 1) * EULER_GAMMA)
    h_cond = n * (_LOG_PI + 1.0) + math.log1p(n * snr)
    return BoundValue("lower", (h_noiseless - h_cond) / n, snr=snr, n=n, q=1)


def rank_one_upper_bound(n, snr, rho0=None):
    """Duality upper bound with the ``alpha = 1`` output law and ``||x||^2 >= rho0``.

    Parameters
    ----------
    n : int
        Block length, ``n >= 2``.
    snr : float
        Linear SNR.
    rho0 : float or BoundConfig, optional
        Input-norm floor; defaults to :func:`default_rho0`.

    Notes
    -----
    This bounds the capacity restricted to inputs outside the ball
    ``||x||^2 < rho0``. It is an upper bound on the unconstrained capacity
    only asymptotically.
    """
    n = _check_n(n)
    snr = float(snr)
    if not snr > 0:
        raise ValueError("snr must be positive")
    if isinstance(rho0, BoundConfig):
        rho0 = rho0.rho0
    if rho0 is None:
        rho0 = default_rho0(snr)
    rho0 = float(rho0)
    if not rho0 > 0:
        raise ValueError("rank-one upper bound needs rho0 > 0")
    val = (math.log(n * snr + n) + (n - 2) * math.log1p(n * snr)
           + (n - 1) * g_lemma((n - 1) / (1.0 + rho0)) - log_gamma(n) - (n - 1)) / n
    return BoundValue("upper", val, snr=snr, n=n, q=1, rho0=rho0, alpha=1.0,
                      note=UPPER_RANK_ONE_NOTE)


def duality_gap(n, rho0):
    """High-SNR limit of upper minus lower bound: ``((N-1)/N)(g((N-1)/(1+rho0)) + γ)``."""
    n = _check_n(n)
    if not rho0 >= 0:
        raise ValueError("rho0 must be >= 0")
    if math.isinf(rho0):
        return 0.0
    return (n - 1) / n * (g_lemma((n - 1) / (1.0 + rho0)) + EULER_GAMMA)


def memoryless_alpha(snr):
    return 1.0 / (1.0 + math.log1p(snr))


def memoryless_upper_bound(snr):
    """Duality bound for i.i.d. fading with ``alpha = 1/(1 + log(1+ρ))``.

    Evaluates to ``log Γ(α) - α log α - γ``. Grows like ``log log ρ - γ``,
    one nat above the tight constant ``-γ - 1``.
    """
    snr = float(snr)
    if not snr >= MEMORYLESS_MIN_SNR:
        raise ValueError(f"memoryless bound needs snr >= {MEMORYLESS_MIN_SNR}")
    a = memoryless_alpha(snr)
    val = log_gamma(a) - a * math.log(a) - EULER_GAMMA
    return BoundValue("upper", val, snr=snr, n=1, q=1, alpha=a,
                      note=UPPER_MEMORYLESS_NOTE)


def sphere_input(n, snr):
    """Sampler for ``x = sqrt(Nρ) x_hat`` with ``x_hat`` uniform on the unit sphere."""
    radius = math.sqrt(n * snr)

    def sampler(rng, m):
        z = ch.crandn(rng, (m, n))
        return radius * z / np.linalg.norm(z, axis=-1, keepdims=True)

    return sampler


def mc_duality_upper_bound(input_sampler, r, p, cfg=None, workers=None, stream=0):
    """Monte-Carlo estimate of ``(1/N) E_P[D(W(.|x) || Q)]``.

    Each draw takes ``x ~ P``, a channel output ``y ~ W(.|x)``, and averages
    ``-log det(πe Σ(x)) - log q(y)``. The conditional entropy term is exact,
    so only ``E[-log q(y)]`` is sampled.

    Parameters
    ----------
    input_sampler : callable
        ``input_sampler(rng, m)`` returns an ``(m, N)`` complex array.
    r : CorrelationMatrix
    p : OutputDensityParams
        The auxiliary output law ``Q``.
    cfg : BoundConfig, optional
        Supplies ``mc_samples`` and ``seed``.

    Returns
    -------
    McEstimate
    """
    cfg = cfg or BoundConfig()
    if p.n != r.n:
        raise ValueError(f"output density has n={p.n}, channel has n={r.n}")
    n = r.n
    c = n * (_LOG_PI + 1.0)

    def draw(rng, m):
        x = np.asarray(input_sampler(rng, m), dtype=complex)
        if x.shape != (m, n):
            raise ValueError(f"input sampler returned shape {x.shape}, expected {(m, n)}")
        h = ch.sample_fading(r, rng, m)
        y = ch.apply_channel(x, h, rng)
        return (-(c + ch.cond_logdet(x, r)) - output_logdensity(y, p)) / n

    return run_chunked(draw, cfg.mc_samples, cfg.seed, stream=stream, workers=workers)
