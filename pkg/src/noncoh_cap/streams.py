"""Reproducible, shardable Monte-Carlo estimation.

Samples are cut into fixed-size chunks. Chunk ``k`` of stream ``s`` always
draws from ``SeedSequence(seed, spawn_key=(s, k))``, whatever thread ends
up running it, and chunk statistics are merged in chunk order. The result is
therefore bit-identical for any worker count.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, asdict
import math
import os

import numpy as np

__all__ = ["McEstimate", "CHUNK_SIZE", "THREADS_ENV", "worker_count",
           "chunk_rng", "run_chunked"]

CHUNK_SIZE = 1 << 16
THREADS_ENV = "NONCOH_CAP_THREADS"


@dataclass(frozen=True)
class McEstimate:
    """Monte-Carlo sample mean with its standard error."""

    value: float
    stderr: float
    samples: int
    seed: int

    def z_score(self, target, other_stderr=0.0):
        se = math.hypot(self.stderr, other_stderr)
        if se == 0.0:
            return 0.0 if self.value == target else math.copysign(math.inf, self.value - target)
        return (self.value - target) / se

    def to_dict(self):
        return asdict(self)


def worker_count(workers=None):
    """Resolve the number of worker threads.

    An explicit argument wins; otherwise ``$NONCOH_CAP_THREADS`` caps the
    count, defaulting to the CPU count.
    """
    if workers is not None:
        return max(1, int(workers))
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def chunk_rng(seed, stream, chunk):
    """Generator for one chunk; depends only on ``(seed, stream, chunk)``."""
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(stream), int(chunk)))
    return np.random.Generator(np.random.PCG64(ss))


def _chunk_sizes(samples, chunk_size):
    full, rest = divmod(samples, chunk_size)
    return [chunk_size] * full + ([rest] if rest else [])


def _chunk_stats(values):
    values = np.asarray(values, dtype=float)
    mean = float(values.mean())
    m2 = float(np.sum((values - mean) ** 2))
    return values.size, mean, m2


def run_chunked(sample_fn, samples, seed, stream=0, workers=None,
                chunk_size=CHUNK_SIZE):
    """Estimate ``E[f]`` from per-sample values produced in chunks.

    Parameters
    ----------
    sample_fn : callable
        ``sample_fn(rng, m)`` returns a length-``m`` array of i.i.d. draws
        of the quantity being averaged.
    samples : int
        Total number of draws.
    seed : int
        Root seed.
    stream : int, optional
        Independent stream label, for running several estimators off one
        seed without sharing draws.
    workers : int, optional
        Thread count (see :func:`worker_count`).

    Returns
    -------
    McEstimate
    """
    samples = int(samples)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    sizes = _chunk_sizes(samples, chunk_size)

    def job(k):
        vals = sample_fn(chunk_rng(seed, stream, k), sizes[k])
        if np.shape(vals) != (sizes[k],):
            raise ValueError(
                f"sampler returned shape {np.shape(vals)}, expected ({sizes[k]},)")
        return _chunk_stats(vals)

    nworkers = min(worker_count(workers), len(sizes))
    if nworkers == 1:
        stats = [job(k) for k in range(len(sizes))]
    else:
        with ThreadPoolExecutor(max_workers=nworkers) as ex:
            stats = list(ex.map(job, range(len(sizes))))

    # Chan et al. pairwise update, applied in chunk order
    n, mean, m2 = stats[0]
    for nb, mb, m2b in stats[1:]:
        tot = n + nb
        delta = mb - mean
        mean += delta * nb / tot
        m2 += m2b + delta * delta * n * nb / tot
        n = tot
    var = m2 / (n - 1) if n > 1 else 0.0
    return McEstimate(value=float(mean), stderr=math.sqrt(var / n),
                      samples=n, seed=int(seed))
