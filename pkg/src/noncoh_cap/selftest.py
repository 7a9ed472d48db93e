"""Acceptance checks behind ``noncoh-cap selftest``.

Each check returns ``(passed, detail)``. :func:`run_all` prints one line per
check and an overall verdict.
"""

import math
import os
import sys
import time

import numpy as np
from scipy import integrate

from . import asymptotics as asy
from . import bounds as bd
from . import channel as ch
from . import montecarlo as mc
from .specfun import EULER_GAMMA, g_lemma
from .streams import THREADS_ENV

__all__ = ["CHECKS", "run_all"]


def _g_quad(a):
    """``∫_0^∞ e^{-v} log(a+v) dv`` by adaptive quadrature, split at 1."""
    f = lambda v: math.exp(-v) * math.log(a + v)
    lo, _ = integrate.quad(f, 0, 1, epsabs=1e-14, epsrel=1e-13, limit=200,
                           points=[a] if a < 1 else None)
    hi, _ = integrate.quad(f, 1, math.inf, epsabs=1e-14, epsrel=1e-13, limit=200)
    return lo + hi


def c1_lemma():
    worst = max(abs(g_lemma(a) - _g_quad(a)) for a in np.logspace(-6, 2, 20))
    small = abs(g_lemma(1e-8) + EULER_GAMMA)
    return worst <= 1e-8 and small <= 1e-6, f"max quad err {worst:.2e}, |g(1e-8)+γ| {small:.2e}"


def c2_log_moment():
    est = mc.mc_mean_log_abs_sq(1_000_000, seed=0)
    z = est.z_score(-EULER_GAMMA)
    return abs(z) <= 3, f"estimate {est.value:.6f} ± {est.stderr:.1e}, z={z:+.2f}"


def c3_sandwich():
    snr = 1e8
    rho0 = math.sqrt(snr)
    worst = []
    ok = True
    for n in (2, 3, 4):
        lo = bd.rank_one_lower_bound(n, snr).nats_per_use
        up = bd.rank_one_upper_bound(n, snr, rho0).nats_per_use
        d = up - lo
        gap = bd.duality_gap(n, 1e4)
        conv = abs(lo - asy.rank_one_asymptote(n, snr))
        ok &= 0 <= d <= gap + 1e-3 and conv <= 1e-3
        worst.append(f"n={n}: up-lo={d:.2e}, |lo-asym|={conv:.1e}")
    return ok, "; ".join(worst)


def _slope(n, dbs):
    x = np.log([bd.db_to_snr(d) for d in dbs])
    y = [bd.rank_one_lower_bound(n, math.exp(v)).nats_per_use for v in x]
    return np.polyfit(x, y, 1)[0]


def c4_prelog():
    dbs = np.arange(60.0, 80.0 + 1e-9, 1.0)
    errs = {n: abs(_slope(n, dbs) - (n - 1) / n) for n in (2, 4, 8)}
    return max(errs.values()) <= 0.01, ", ".join(f"n={n}: |slope err| {e:.1e}" for n, e in errs.items())


def c5_memoryless():
    r1 = abs(bd.memoryless_upper_bound(1e10).nats_per_use
             - (math.log(math.log(1e10)) - EULER_GAMMA))
    d2 = (bd.memoryless_upper_bound(1e12).nats_per_use
          - asy.full_rank_iid_asymptote(1e12))
    return r1 <= 0.08 and 0.9 <= d2 <= 1.1, \
        f"residual at 1e10 {r1:.4f} (limit 0.08), U-asym at 1e12 {d2:.4f} (range [0.9,1.1])"


def c6_normalization():
    parts, ok = [], True
    for i, (n, a) in enumerate(((1, 0.1), (1, 1.0), (2, 1.0), (2, 2.0))):
        p = bd.OutputDensityParams(n=n, alpha=a, beta=n * 2.0 / a)
        est = mc.mc_output_normalization(p, 1_000_000, seed=10 + i)
        ok &= abs(est.value - 1.0) <= 0.01
        parts.append(f"(N={n},α={a:g}) {est.value:.4f}")
    return ok, ", ".join(parts)


def c7_isotropic():
    est = mc.mc_entropy_isotropic(2, 100.0, 1_000_000, seed=0)
    z = est.z_score(mc.entropy_isotropic_closed_form(2, 100.0))
    return abs(z) <= 3, f"estimate {est.value:.5f}, z={z:+.2f}"


def c8_mixture():
    direct, mixture = mc.mc_norm_mixture_check(np.array([10.0, 0.0]), 1_000_000, seed=0)
    z = direct.z_score(mixture.value, mixture.stderr)
    return abs(z) <= 3, f"direct {direct.value:.5f}, mixture {mixture.value:.5f}, z={z:+.2f}"


def c9_channel_stats():
    rng = np.random.default_rng(0)
    parts, ok = [], True
    for label, r, q in (("rank_one", ch.make_rank_one_corr(4), 1),
                        ("iid", ch.make_iid_corr(4), 4),
                        ("circ(3,1)", ch.make_circulant_corr(4, (3, 1)), 2)):
        h = ch.sample_fading(r, rng, 100_000)
        emp = h.T @ h.conj() / h.shape[0]
        fro = np.linalg.norm(emp - r.entries)
        ok &= fro <= 0.05 and r.rank_q == q
        parts.append(f"{label}: fro {fro:.3f}, Q={r.rank_q}")
    return ok, "; ".join(parts)


def c10_mc_duality():
    snr = 1000.0
    r = ch.make_rank_one_corr(2)
    cfg = bd.BoundConfig(rho0=1.0, mc_samples=100_000, seed=0)
    est = bd.mc_duality_upper_bound(bd.sphere_input(2, snr), r,
                                    bd.OutputDensityParams.for_snr(2, snr), cfg)
    d = est.value - bd.rank_one_lower_bound(2, snr).nats_per_use
    return -3 * est.stderr <= d <= 0.5, f"MC - lower = {d:.5f} (SE {est.stderr:.1e})"


def c11_corr_constant():
    snr = 1e6
    r = ch.corr_from_matrix([[1.0, 0.5], [0.5, 1.0]])
    d = asy.full_rank_corr_asymptote(snr, r) - asy.full_rank_iid_asymptote(snr)
    d0 = asy.full_rank_corr_asymptote(snr, ch.make_iid_corr(2)) - asy.full_rank_iid_asymptote(snr)
    return abs(d - 0.143841) <= 5e-7 and d0 == 0.0, f"correction {d:.7f}, identity {d0}"


def c12_reproducible():
    from .cli import SweepConfig, cmd_bounds, cmd_mc_verify, render, render_report
    outs = []
    saved = os.environ.get(THREADS_ENV)
    try:
        for threads in ("1", "4"):
            os.environ[THREADS_ENV] = threads
            cfg = SweepConfig(snr_db=tuple(float(v) for v in range(0, 81, 5)))
            b = render(cmd_bounds(cfg), "csv")
            rep, _ = cmd_mc_verify(SweepConfig(samples=200_000, seed=7))
            outs.append((b, render_report(rep, "json")))
    finally:
        if saved is None:
            os.environ.pop(THREADS_ENV, None)
        else:
            os.environ[THREADS_ENV] = saved
    same = outs[0] == outs[1]
    return same, "outputs identical for 1 and 4 threads" if same else "outputs differ"


CHECKS = [
    ("C1", "g(a) vs quadrature", c1_lemma),
    ("C2", "Gaussian log-moment -γ", c2_log_moment),
    ("C3", "rank-one sandwich at 80 dB", c3_sandwich),
    ("C4", "pre-log slope 60-80 dB", c4_prelog),
    ("C5", "memoryless double-log bound", c5_memoryless),
    ("C6", "output density normalization", c6_normalization),
    ("C7", "geometric output identity", c7_isotropic),
    ("C8", "chi-square mixture", c8_mixture),
    ("C9", "channel statistics", c9_channel_stats),
    ("C10", "MC duality consistency", c10_mc_duality),
    ("C11", "full-rank correlated constant", c11_corr_constant),
    ("C12", "reproducibility across threads", c12_reproducible),
]


def run_all(out=sys.stdout):
    all_ok = True
    for cid, title, fn in CHECKS:
        t0 = time.perf_counter()
        ok, detail = fn()
        all_ok &= bool(ok)
        print(f"{cid:<4} {'PASS' if ok else 'FAIL'}  {title:<34} "
              f"{time.perf_counter() - t0:6.2f}s  {detail}", file=out)
    print(f"selftest: {'PASS' if all_ok else 'FAIL'}", file=out)
    return all_ok
