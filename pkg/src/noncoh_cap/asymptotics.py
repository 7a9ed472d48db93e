"""High-SNR capacity expansions, in nats per channel use.

These are the ``o(1)``-accurate expansions, i.e. capacity minus a term that
vanishes as the SNR grows. No randomness is involved.
"""

import math

import numpy as np

from .specfun import EULER_GAMMA, log_gamma

__all__ = [
    "LOGLOG_MIN_SNR",
    "prelog",
    "rank_one_asymptote",
    "full_rank_iid_asymptote",
    "full_rank_corr_asymptote",
]

# below this the log-log expansions are not reported
LOGLOG_MIN_SNR = 3.0


def _check_snr(snr, floor=None):
    snr = float(snr)
    if not snr > 0:
        raise ValueError(f"snr must be positive, got {snr!r}")
    if floor is not None and snr < floor:
        raise ValueError(f"snr must be >= {floor} for this expansion, got {snr!r}")
    return snr


def prelog(n, q):
    """Pre-log ``1 - Q/N`` of a block of length ``n`` with fading rank ``q``."""
    if not 1 <= q <= n:
        raise ValueError(f"need 1 <= q <= n, got q={q}, n={n}")
    return 1.0 - q / n


def rank_one_asymptote(n, snr):
    """Capacity expansion of the piecewise-constant (rank-one) channel.

    ``((N-1)/N) [log ρ + log N - γ - 1] - log Γ(N) / N``

    Parameters
    ----------
    n : int
        Block length, at least 2.
    snr : float
        Linear receive SNR ``ρ > 0``.
    """
    if n < 2:
        raise ValueError("rank-one expansion needs n >= 2")
    snr = _check_snr(snr)
    return ((n - 1) / n) * (math.log(snr) + math.log(n) - EULER_GAMMA - 1.0) \
        - log_gamma(n) / n


def full_rank_iid_asymptote(snr):
    """``log log ρ - γ - 1`` for i.i.d. (memoryless) fading; needs ``ρ >= 3``."""
    snr = _check_snr(snr, LOGLOG_MIN_SNR)
    return math.log(math.log(snr)) - EULER_GAMMA - 1.0


def full_rank_corr_asymptote(snr, r):
    """Full-rank correlated fading: the i.i.d. value minus ``mean(log λ_q(R))``.

    The correction is nonnegative because the eigenvalues sum to ``N``.
    """
    if r.rank_q != r.n:
        raise ValueError(f"R has rank {r.rank_q} < n={r.n}; not full rank")
    if r.is_identity:
        return full_rank_iid_asymptote(snr)
    lam = np.asarray(r.eigvals, dtype=float)
    return full_rank_iid_asymptote(snr) - float(np.mean(np.log(lam)))
