"""Correlated block-fading channel ``y = diag(h) x + w``.

``h ~ CN(0, R)`` with ``R`` Hermitian PSD with unit diagonal, ``w ~ CN(0, I)``.
All vector arguments accept a leading batch shape, i.e. ``(..., N)``.
"""

from dataclasses import dataclass, field
import json
import math

import numpy as np

__all__ = [
    "CorrelationMatrix",
    "ChannelConfig",
    "MODELS",
    "RANK_TOL",
    "make_rank_one_corr",
    "make_iid_corr",
    "make_circulant_corr",
    "corr_from_matrix",
    "corr_from_json",
    "crandn",
    "sample_fading",
    "apply_channel",
    "conditional_covariance",
    "cond_logdet",
    "cond_output_logdensity",
]

MODELS = ("rank_one", "iid", "circulant")
RANK_TOL = 1e-9
_STRUCT_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class CorrelationMatrix:
    """Fading correlation matrix ``R`` and its spectral data.

    Build through :func:`make_rank_one_corr`, :func:`make_iid_corr`,
    :func:`make_circulant_corr` or :func:`corr_from_matrix`; those validate
    the invariants (Hermitian, PSD, unit diagonal).

    Attributes
    ----------
    entries : ndarray, shape (N, N)
    eigvals : ndarray, shape (N,)
        Descending eigenvalues, summing to ``N``.
    factor : ndarray, shape (N, Q)
        ``U_Q diag(sqrt(λ_Q))`` so that ``R = factor @ factor^H``.
    kind : str
        ``"rank_one"``, ``"iid"``, ``"circulant"`` or ``"dense"``.
    taps : tuple of float or None
        Circulant tap powers as given (before normalization).
    """

    entries: np.ndarray
    eigvals: np.ndarray
    factor: np.ndarray
    kind: str = "dense"
    taps: tuple = None
    rank_q: int = field(init=False)

    def __post_init__(self):
        for arr in (self.entries, self.eigvals, self.factor):
            arr.setflags(write=False)
        lam = self.eigvals
        object.__setattr__(self, "rank_q", int(np.sum(lam > RANK_TOL * lam[0])))

    @property
    def n(self):
        return self.entries.shape[0]

    @property
    def is_rank_one(self):
        return self.kind == "rank_one"

    @property
    def is_identity(self):
        return self.kind == "iid"

    def to_dict(self):
        """JSON description ``{"kind", "n", "taps"}``."""
        if self.kind == "dense":
            raise ValueError("dense correlation matrices have no JSON description")
        return {"kind": self.kind, "n": self.n,
                "taps": list(self.taps) if self.taps is not None else []}

    def to_json(self):
        return json.dumps(self.to_dict())

    def __repr__(self):
        return f"CorrelationMatrix(kind={self.kind!r}, n={self.n}, rank_q={self.rank_q})"


@dataclass(frozen=True)
class ChannelConfig:
    """Block length, linear receive SNR and correlation model."""

    n: int
    snr: float
    model: str = "rank_one"
    taps: tuple = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("block length must be >= 1")
        if not self.snr > 0:
            raise ValueError("snr must be positive")
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}")
        if self.model == "circulant" and not self.taps:
            raise ValueError("circulant model needs taps")

    def correlation(self):
        if self.model == "rank_one":
            return make_rank_one_corr(self.n)
        if self.model == "iid":
            return make_iid_corr(self.n)
        return make_circulant_corr(self.n, self.taps)


def make_rank_one_corr(n):
    """All-ones ``R``: the fading gain stays constant over the block."""
    n = int(n)
    if n < 1:
        raise ValueError("n must be >= 1")
    lam = np.zeros(n)
    lam[0] = n
    return CorrelationMatrix(entries=np.ones((n, n), dtype=complex), eigvals=lam,
                             factor=np.ones((n, 1), dtype=complex), kind="rank_one")


def make_iid_corr(n):
    """``R = I_N``: independent fading across the block."""
    n = int(n)
    if n < 1:
        raise ValueError("n must be >= 1")
    eye = np.eye(n, dtype=complex)
    return CorrelationMatrix(entries=eye, eigvals=np.ones(n), factor=eye.copy(),
                             kind="iid")


def _dft(n):
    k = np.arange(n)
    return np.exp(-2j * np.pi * np.outer(k, k) / n) / math.sqrt(n)


def make_circulant_corr(n, taps):
    """Circulant ``R = F diag(λ) F^H`` from positive tap powers.

    The taps become the nonzero eigenvalues after scaling to sum to ``n``,
    so the rank equals ``len(taps)`` and the diagonal is exactly one.

    Parameters
    ----------
    n : int
        Block length.
    taps : sequence of float
        ``1 <= len(taps) <= n`` strictly positive powers.
    """
    n = int(n)
    taps = tuple(float(t) for t in np.atleast_1d(taps))
    q = len(taps)
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 1 <= q <= n:
        raise ValueError(f"need 1 <= len(taps) <= n, got {q} taps for n={n}")
    if any(not t > 0 for t in taps):
        raise ValueError("taps must be strictly positive")
    lam = np.zeros(n)
    lam[:q] = np.asarray(taps) * (n / sum(taps))
    F = _dft(n)
    R = (F * lam) @ F.conj().T
    R = 0.5 * (R + R.conj().T)
    order = np.argsort(-lam, kind="stable")
    factor = F[:, order[:q]] * np.sqrt(lam[order[:q]])
    return CorrelationMatrix(entries=R, eigvals=lam[order], factor=factor,
                             kind="circulant", taps=taps)


def corr_from_matrix(R):
    """Validate an arbitrary matrix and wrap it as a :class:`CorrelationMatrix`."""
    R = np.array(R, dtype=complex)
    if R.ndim != 2 or R.shape[0] != R.shape[1]:
        raise ValueError("R must be square")
    if np.max(np.abs(R - R.conj().T)) > _STRUCT_TOL:
        raise ValueError("R is not Hermitian")
    if np.max(np.abs(np.diag(R) - 1.0)) > _STRUCT_TOL:
        raise ValueError("R must have unit diagonal")
    R = 0.5 * (R + R.conj().T)
    lam, U = np.linalg.eigh(R)
    lam, U = lam[::-1], U[:, ::-1]
    if lam[-1] < -_STRUCT_TOL * lam[0]:
        raise ValueError("R is not positive semidefinite")
    lam = np.clip(lam, 0.0, None)
    q = int(np.sum(lam > RANK_TOL * lam[0]))
    return CorrelationMatrix(entries=R, eigvals=lam, factor=U[:, :q] * np.sqrt(lam[:q]))


def corr_from_json(desc):
    """Inverse of :meth:`CorrelationMatrix.to_dict`; accepts a dict or JSON text."""
    if isinstance(desc, (str, bytes)):
        desc = json.loads(desc)
    kind, n = desc["kind"], desc["n"]
    if kind == "rank_one":
        return make_rank_one_corr(n)
    if kind == "iid":
        return make_iid_corr(n)
    if kind == "circulant":
        return make_circulant_corr(n, desc["taps"])
    raise ValueError(f"unknown correlation kind {kind!r}")


def crandn(rng, shape):
    """Standard circularly-symmetric complex Gaussian, ``E|z|^2 = 1``."""
    z = rng.standard_normal(tuple(np.atleast_1d(shape)) + (2,))
    return (z[..., 0] + 1j * z[..., 1]) * math.sqrt(0.5)


def sample_fading(r, rng, size=None):
    """Draw ``h ~ CN(0, R)``.

    Parameters
    ----------
    r : CorrelationMatrix
    rng : numpy.random.Generator
    size : int or tuple, optional
        Batch shape; the result has shape ``size + (N,)``.
    """
    batch = () if size is None else tuple(np.atleast_1d(size))
    z = crandn(rng, batch + (r.factor.shape[1],))
    return z @ r.factor.T


def _check_dims(x, n, name="x"):
    if np.shape(x)[-1] != n:
        raise ValueError(f"{name} has length {np.shape(x)[-1]}, expected {n}")


def apply_channel(x, h, rng, noise=True):
    """``y = diag(h) x + w`` with fresh ``w ~ CN(0, I)``.

    ``noise=False`` returns the noiseless product (used in tests).
    """
    x = np.asarray(x, dtype=complex)
    h = np.asarray(h, dtype=complex)
    if x.shape[-1] != h.shape[-1]:
        raise ValueError(f"dimension mismatch: x has {x.shape[-1]}, h has {h.shape[-1]}")
    y = h * x
    if noise:
        y = y + crandn(rng, y.shape)
    return y


def conditional_covariance(x, r):
    """``Σ(x) = diag(x) R diag(x)^H + I`` (batched over leading axes)."""
    x = np.asarray(x, dtype=complex)
    _check_dims(x, r.n)
    sigma = x[..., :, None] * r.entries * x[..., None, :].conj()
    return sigma + np.eye(r.n)


def _cond_logdet_quad(y, x, r):
    """``log det Σ(x)`` and ``y^H Σ(x)^{-1} y``."""
    if r.is_rank_one:
        nx2 = np.sum(np.abs(x) ** 2, axis=-1)
        xhy = np.sum(x.conj() * y, axis=-1)
        ny2 = np.sum(np.abs(y) ** 2, axis=-1)
        return np.log1p(nx2), ny2 - np.abs(xhy) ** 2 / (1.0 + nx2)
    if r.is_identity:
        d = 1.0 + np.abs(x) ** 2
        return np.sum(np.log(d), axis=-1), np.sum(np.abs(y) ** 2 / d, axis=-1)
    return _dense_logdet_quad(y, x, r)


def _dense_logdet_quad(y, x, r):
    L = np.linalg.cholesky(conditional_covariance(x, r))
    logdet = 2.0 * np.sum(np.log(np.real(np.diagonal(L, axis1=-2, axis2=-1))), axis=-1)
    v = np.linalg.solve(L, y[..., None])[..., 0]
    return logdet, np.sum(np.abs(v) ** 2, axis=-1)


def cond_logdet(x, r):
    """``log det Σ(x)``; closed forms for the rank-one and i.i.d. models."""
    x = np.asarray(x, dtype=complex)
    _check_dims(x, r.n)
    if r.is_rank_one:
        return np.log1p(np.sum(np.abs(x) ** 2, axis=-1))
    if r.is_identity:
        return np.sum(np.log1p(np.abs(x) ** 2), axis=-1)
    return np.linalg.slogdet(conditional_covariance(x, r))[1]


def cond_output_logdensity(y, x, r, dense=False):
    """``log W(y|x) = -N log π - log det Σ(x) - y^H Σ(x)^{-1} y``.

    ``dense=True`` forces the generic Cholesky path even when a rank-one or
    diagonal shortcut exists.
    """
    y = np.asarray(y, dtype=complex)
    x = np.asarray(x, dtype=complex)
    _check_dims(x, r.n)
    _check_dims(y, r.n, "y")
    if dense:
        logdet, quad = _dense_logdet_quad(y, x, r)
    else:
        logdet, quad = _cond_logdet_quad(y, x, r)
    return -r.n * math.log(math.pi) - logdet - quad
