"""Stochastic oracles for the identities the bounds rest on.

Every estimator takes ``(samples, seed)`` and returns :class:`McEstimate`;
the same pair always reproduces the same number, whatever the thread count.
:func:`verification_report` bundles them into the ``mc-verify`` check list.
"""

import math

import numpy as np
from scipy import stats

from . import channel as ch
from .bounds import (OutputDensityParams, output_logdensity, rank_one_lower_bound,
                     mc_duality_upper_bound, sphere_input, BoundConfig)
from .specfun import EULER_GAMMA, g_lemma, log_gamma
from .streams import McEstimate, run_chunked

__all__ = [
    "McEstimate",
    "Z_THRESHOLD",
    "mc_mean_log_abs_sq",
    "mc_g",
    "mc_norm_mixture_check",
    "mc_entropy_isotropic",
    "entropy_isotropic_closed_form",
    "mc_output_normalization",
    "mc_cond_entropy",
    "verification_report",
]

Z_THRESHOLD = 3.0


def _exp_unit(rng, m):
    # |z|^2 for z ~ CN(0, 1)
    return np.abs(ch.crandn(rng, m)) ** 2


def mc_mean_log_abs_sq(samples, seed=0, workers=None):
    """Estimate ``E[log |z|^2]`` for ``z ~ CN(0, 1)``; the exact value is ``-γ``."""
    return run_chunked(lambda rng, m: np.log(_exp_unit(rng, m)), samples, seed,
                       workers=workers)


def mc_g(a, samples, seed=0, workers=None):
    """Estimate ``E[log(a + |z|^2)]``, which should equal ``g_lemma(a)``."""
    if a < 0:
        raise ValueError("a must be >= 0")
    return run_chunked(lambda rng, m: np.log(a + _exp_unit(rng, m)), samples, seed,
                       workers=workers)


def mc_norm_mixture_check(x, samples, seed=0, workers=None):
    """``E[log ||y||^2]`` on the rank-one channel, two ways.

    The direct route simulates ``y = h x + w``. The mixture route draws
    ``sum_{i<N} |w_i|^2 + (1 + ||x||^2) |w_N|^2``. The two use independent
    streams.

    Returns
    -------
    (McEstimate, McEstimate)
        ``(direct, mixture)``.
    """
    x = np.asarray(x, dtype=complex)
    n = x.shape[-1]
    r = ch.make_rank_one_corr(n)
    nx2 = float(np.sum(np.abs(x) ** 2))

    def direct(rng, m):
        h = ch.sample_fading(r, rng, m)
        y = ch.apply_channel(x, h, rng)
        return np.log(np.sum(np.abs(y) ** 2, axis=-1))

    def mixture(rng, m):
        w2 = np.abs(ch.crandn(rng, (m, n))) ** 2
        return np.log(np.sum(w2[:, :-1], axis=-1) + (1.0 + nx2) * w2[:, -1])

    return (run_chunked(direct, samples, seed, stream=0, workers=workers),
            run_chunked(mixture, samples, seed, stream=1, workers=workers))


def entropy_isotropic_closed_form(n, snr):
    """``h(h x)`` for the sphere input: ``N log(Nρ) + 1 + log(π^N/Γ(N)) - (N-1)γ``."""
    return (n * math.log(n * snr) + 1.0 + n * math.log(math.pi) - log_gamma(n)
            - (n - 1) * EULER_GAMMA)


def mc_entropy_isotropic(n, snr, samples, seed=0, workers=None):
    """Cross-entropy of the noiseless sphere-input output against the ``alpha=1`` law.

    Simulates ``y = h x`` with ``x = sqrt(Nρ) x_hat`` and averages
    ``-log q(y)`` with ``q`` the isotropic density, ``alpha = 1``,
    ``beta = Nρ``. If ``q`` is exactly the law of ``y`` this is the
    differential entropy ``h(y)``.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    p = OutputDensityParams(n=n, alpha=1.0, beta=n * snr)
    r = ch.make_rank_one_corr(n)
    xs = sphere_input(n, snr)

    def draw(rng, m):
        x = xs(rng, m)
        h = ch.sample_fading(r, rng, m)
        return -output_logdensity(ch.apply_channel(x, h, rng, noise=False), p)

    return run_chunked(draw, samples, seed, workers=workers)


def _isotropic_proposal_logpdf(y2, n, shape, scale):
    # isotropic law on C^n whose squared norm is Gamma(shape, scale)
    return (stats.gamma.logpdf(y2, shape, scale=scale) + log_gamma(n)
            - n * math.log(math.pi) - (n - 1) * np.log(y2))


def mc_output_normalization(p, samples, seed=0, workers=None):
    """Importance-sampling estimate of ``∫ q(y) dy`` over ``C^N``; should be 1.

    The proposal is isotropic with ``||y||^2 ~ Gamma(alpha/2, 2 beta)``,
    heavier than ``q`` both near the origin and in the tail, so the weights
    stay bounded. Its density is evaluated through ``scipy.stats`` rather
    than :func:`output_logdensity`.
    """
    shape, scale = p.alpha / 2.0, 2.0 * p.beta

    def draw(rng, m):
        z = ch.crandn(rng, (m, p.n))
        u = z / np.linalg.norm(z, axis=-1, keepdims=True)
        g = rng.gamma(shape, scale, size=m)
        g = np.maximum(g, np.finfo(float).tiny)
        y = u * np.sqrt(g)[:, None]
        return np.exp(output_logdensity(y, p) - _isotropic_proposal_logpdf(g, p.n, shape, scale))

    return run_chunked(draw, samples, seed, workers=workers)


def mc_cond_entropy(x, r, samples, seed=0, workers=None):
    """Estimate ``h(y | x) = -E[log W(y|x)]`` by simulation (compare ``log det(πe Σ(x))``)."""
    x = np.asarray(x, dtype=complex)

    def draw(rng, m):
        h = ch.sample_fading(r, rng, m)
        y = ch.apply_channel(x, h, rng)
        return -ch.cond_output_logdensity(y, np.broadcast_to(x, y.shape), r)

    return run_chunked(draw, samples, seed, workers=workers)


def _zcheck(name, est, target, other=None):
    other_se = other.stderr if other is not None else 0.0
    value = est.value - (other.value if other is not None else 0.0)
    se = math.hypot(est.stderr, other_se)
    z = (value - target) / se if se > 0 else (0.0 if value == target else math.inf)
    return {"name": name, "estimate": value, "target": target, "stderr": se,
            "z": z, "pass": bool(abs(z) <= Z_THRESHOLD)}


def verification_report(samples=1_000_000, seed=0, workers=None, corrupt=False):
    """Run the oracle suite and return one dict per check.

    Each dict has ``name, estimate, target, stderr, z, pass``. Z-checks pass
    at ``|z| <= 3``; the density-normalization checks pass at 1% relative
    error. ``corrupt=True`` perturbs the Euler constant in the targets, as a
    negative control.
    """
    gamma = EULER_GAMMA + (0.01 if corrupt else 0.0)
    out = []

    est = mc_mean_log_abs_sq(samples, seed, workers)
    out.append(_zcheck("mean_log_abs_sq", est, -gamma))

    for i, a in enumerate((1.0, 100.0)):
        est = mc_g(a, samples, seed + 1 + i, workers)
        target = g_lemma(a) + (gamma - EULER_GAMMA)
        out.append(_zcheck(f"g_lemma_a={a:g}", est, target))

    x = np.array([10.0, 0.0], dtype=complex)
    direct, mixture = mc_norm_mixture_check(x, samples, seed + 3, workers)
    out.append(_zcheck("norm_mixture_n=2_x2=100", direct, 0.0, other=mixture))

    est = mc_entropy_isotropic(2, 100.0, samples, seed + 4, workers)
    target = entropy_isotropic_closed_form(2, 100.0) - (gamma - EULER_GAMMA)
    out.append(_zcheck("entropy_isotropic_n=2_snr=100", est, target))

    for j, (n, alpha) in enumerate(((1, 0.1), (1, 1.0), (2, 1.0), (2, 2.0))):
        p = OutputDensityParams(n=n, alpha=alpha, beta=n * 2.0 / alpha)
        est = mc_output_normalization(p, samples, seed + 5 + j, workers)
        chk = _zcheck(f"output_density_norm_n={n}_alpha={alpha:g}", est, 1.0)
        chk["pass"] = bool(abs(est.value - 1.0) <= 0.01)
        out.append(chk)

    snr = 1000.0
    cfg = BoundConfig(rho0=1.0, mc_samples=max(1, samples // 10), seed=seed + 9)
    est = mc_duality_upper_bound(sphere_input(2, snr), ch.make_rank_one_corr(2),
                                 OutputDensityParams.for_snr(2, snr), cfg, workers)
    lower = rank_one_lower_bound(2, snr).nats_per_use
    chk = _zcheck("duality_mc_minus_lower_n=2_snr=30dB", est, lower)
    chk["estimate"] = est.value
    chk["pass"] = bool(-Z_THRESHOLD * est.stderr <= est.value - lower <= 0.5)
    out.append(chk)
    return out
