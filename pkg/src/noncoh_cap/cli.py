"""Command-line front end.

    noncoh-cap asymptote --model rank_one --n 2 --snr-db 0:80:5
    noncoh-cap bounds --model iid --snr-db 10:120:10 --format json
    noncoh-cap sweep --model rank_one --n 3 --samples 100000 --out sweep.csv
    noncoh-cap mc-verify --samples 1000000 --seed 0
    noncoh-cap selftest

Exit codes: 0 success, 1 check failure, 2 usage error.
"""

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import asymptotics as asy
from . import bounds as bd
from . import channel as ch
from .montecarlo import verification_report

__all__ = ["SweepConfig", "parse_grid", "cmd_asymptote", "cmd_bounds", "cmd_sweep",
           "cmd_mc_verify", "cmd_selftest", "render", "main"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class SweepConfig:
    """Everything a table-producing subcommand needs."""

    model: str = "rank_one"
    n: int = 2
    taps: tuple = None
    snr_db: tuple = tuple(float(v) for v in range(0, 81, 5))
    rho0: object = "sqrt"
    samples: int = 100_000
    seed: int = 0
    out: str = None
    format: str = "csv"
    workers: int = None

    def correlation(self):
        try:
            return ch.ChannelConfig(n=self.n, snr=1.0, model=self.model,
                                    taps=self.taps).correlation()
        except ValueError as exc:
            raise UsageError(str(exc)) from None

    def rho0_for(self, snr):
        if self.rho0 == "sqrt":
            return bd.default_rho0(snr)
        return float(self.rho0)


def parse_grid(text):
    """``"start:stop:step"`` (inclusive), ``"a,b,c"`` or a single value, in dB."""
    text = text.strip()
    try:
        if ":" in text:
            start, stop, step = (float(t) for t in text.split(":"))
            if not step > 0:
                raise UsageError("grid step must be positive")
            if stop < start:
                raise UsageError("grid stop must be >= start")
            count = int(math.floor((stop - start) / step + 1e-9)) + 1
            return tuple(start + i * step for i in range(count))
        vals = tuple(float(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(f"bad SNR grid {text!r}") from None
    if not vals:
        raise UsageError("empty SNR grid")
    return vals


def _parse_taps(text):
    if text is None:
        return None
    try:
        return tuple(float(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise UsageError(f"bad taps {text!r}") from None


def _parse_rho0(text):
    if text in (None, "sqrt"):
        return "sqrt"
    try:
        val = float(text)
    except ValueError:
        raise UsageError(f"--rho0 must be 'sqrt' or a number, got {text!r}") from None
    if not val > 0:
        raise UsageError("--rho0 must be positive")
    return val


# -- model dispatch ---------------------------------------------------------

def _structure(r):
    """Which closed forms apply: ``rank_one``, ``iid``, ``full_rank`` or ``partial``."""
    if r.rank_q == 1 and r.n >= 2:
        # the only rank-one circulant is the all-ones matrix
        return "rank_one"
    if r.rank_q == r.n:
        return "iid" if np.all(r.eigvals == 1.0) else "full_rank"
    return "partial"


def _asymptote_value(r, snr):
    kind = _structure(r)
    if kind == "rank_one":
        return asy.rank_one_asymptote(r.n, snr)
    if kind in ("iid", "full_rank") and snr >= asy.LOGLOG_MIN_SNR:
        if kind == "iid":
            return asy.full_rank_iid_asymptote(snr)
        return asy.full_rank_corr_asymptote(snr, r)
    return None


def _bounds_row(cfg, r, snr):
    kind = _structure(r)
    lower = upper = gap = rho0 = alpha = None
    note = None
    asym = _asymptote_value(r, snr)
    if kind == "rank_one":
        rho0 = cfg.rho0_for(snr)
        lower = bd.rank_one_lower_bound(r.n, snr).nats_per_use
        ub = bd.rank_one_upper_bound(r.n, snr, rho0)
        upper, alpha, note = ub.nats_per_use, ub.alpha, ub.note
        gap = upper - lower
    elif kind == "iid" and snr >= bd.MEMORYLESS_MIN_SNR:
        ub = bd.memoryless_upper_bound(snr)
        upper, alpha, note = ub.nats_per_use, ub.alpha, ub.note
        gap = upper - asym
    return {"lower": lower, "upper": upper, "asymptote": asym, "gap": gap,
            "rho0": rho0, "alpha": alpha, "note": note}


def _check_model(cfg, r):
    if cfg.model == "rank_one" and r.n < 2:
        raise UsageError("rank_one model needs --n >= 2")


# -- tables -----------------------------------------------------------------

@dataclass
class Table:
    columns: list
    rows: list          # list of dicts keyed by column
    values: list        # BoundValue objects for JSON output


def cmd_asymptote(cfg):
    """One row per grid point: ``snr_db, prelog, asymptote_nats_per_use``."""
    r = cfg.correlation()
    _check_model(cfg, r)
    chi = asy.prelog(r.n, r.rank_q)
    rows, values = [], []
    for db in cfg.snr_db:
        snr = bd.db_to_snr(db)
        val = _asymptote_value(r, snr)
        rows.append({"snr_db": db, "prelog": chi, "asymptote_nats_per_use": val})
        values.append(_bv("prelog", chi, db, r))
        values.append(_bv("asymptote", val, db, r))
    return Table(["snr_db", "prelog", "asymptote_nats_per_use"], rows, values)


_BOUND_COLUMNS = ["snr_db", "rho0", "lower_nats_per_use", "upper_nats_per_use",
                  "asymptote_nats_per_use", "gap_nats_per_use", "upper_note"]


def cmd_bounds(cfg):
    """Lower, upper, asymptote and gap columns over the SNR grid."""
    r = cfg.correlation()
    _check_model(cfg, r)
    if _structure(r) in ("partial", "full_rank"):
        raise UsageError(f"no finite-SNR bounds for {cfg.model} with rank "
                         f"{r.rank_q} of {r.n}; use 'asymptote'")
    rows, values = [], []
    for db in cfg.snr_db:
        b = _bounds_row(cfg, r, bd.db_to_snr(db))
        rows.append(_bounds_record(db, b))
        values.extend(_bounds_values(db, r, b))
    return Table(list(_BOUND_COLUMNS), rows, values)


def _bounds_record(db, b):
    return {"snr_db": db, "rho0": b["rho0"], "lower_nats_per_use": b["lower"],
            "upper_nats_per_use": b["upper"], "asymptote_nats_per_use": b["asymptote"],
            "gap_nats_per_use": b["gap"], "upper_note": b["note"]}


def _bounds_values(db, r, b):
    return [
        _bv("lower", b["lower"], db, r),
        _bv("upper", b["upper"], db, r, rho0=b["rho0"], alpha=b["alpha"], note=b["note"]),
        _bv("asymptote", b["asymptote"], db, r),
        _bv("gap", b["gap"], db, r, rho0=b["rho0"]),
    ]


def cmd_sweep(cfg):
    """Everything at once: pre-log, bounds, asymptote and a Monte-Carlo duality value.

    The Monte-Carlo column evaluates ``E_P[D(W||Q)]`` for the sphere input
    ``||x||^2 = Nρ`` against the output law the analytic upper bound uses.
    """
    r = cfg.correlation()
    _check_model(cfg, r)
    chi = asy.prelog(r.n, r.rank_q)
    kind = _structure(r)
    rows, values = [], []
    for db in cfg.snr_db:
        snr = bd.db_to_snr(db)
        b = _bounds_row(cfg, r, snr)
        alpha = b["alpha"] if b["alpha"] is not None else 1.0
        p = bd.OutputDensityParams.for_snr(r.n, snr, alpha)
        # stream keyed on the grid value: a row does not depend on the rest of the grid
        bcfg = bd.BoundConfig(rho0=b["rho0"] or 0.0, mc_samples=cfg.samples,
                              seed=cfg.seed)
        est = bd.mc_duality_upper_bound(bd.sphere_input(r.n, snr), r, p, bcfg,
                                        workers=cfg.workers, stream=_grid_stream(db))
        rec = _bounds_record(db, b)
        rec.update({"prelog": chi, "mc_duality_nats_per_use": est.value,
                    "mc_stderr_nats_per_use": est.stderr})
        rows.append(rec)
        values.append(_bv("prelog", chi, db, r))
        if kind != "partial":
            values.extend(_bounds_values(db, r, b))
        values.append(_bv("mc_duality", est.value, db, r, alpha=alpha,
                          stderr=est.stderr))
    cols = (["snr_db", "prelog"] + _BOUND_COLUMNS[1:-1]
            + ["mc_duality_nats_per_use", "mc_stderr_nats_per_use", "upper_note"])
    return Table(cols, rows, values)


def _grid_stream(db):
    # stable stream label from the grid value (millibel resolution)
    return int(round(db * 100)) & 0xFFFFFFFF


def _bv(kind, value, db, r, **kw):
    return bd.BoundValue(kind=kind, nats_per_use=value, snr=bd.db_to_snr(db),
                         n=r.n, q=r.rank_q, **kw)


def cmd_mc_verify(cfg, corrupt=False):
    """Run the Monte-Carlo oracle suite; returns ``(report, all_passed)``."""
    checks = verification_report(samples=cfg.samples, seed=cfg.seed,
                                 workers=cfg.workers, corrupt=corrupt)
    ok = all(c["pass"] for c in checks)
    report = {"seed": cfg.seed, "samples": cfg.samples, "pass": ok, "checks": checks}
    return report, ok


def cmd_selftest(out=sys.stdout):
    """Run the acceptance checks and print a pass/fail matrix; returns all-passed."""
    from .selftest import run_all
    return run_all(out=out)


# -- rendering --------------------------------------------------------------

def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _jsonable(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def render(table, fmt):
    """Serialize a :class:`Table` as CSV text or a JSON array of bound values."""
    if fmt == "json":
        items = [{k: _jsonable(v) for k, v in bv.to_dict().items()}
                 for bv in table.values if bv.nats_per_use is not None]
        return json.dumps(items, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(table.columns)
    for row in table.rows:
        w.writerow([_fmt(row.get(c)) for c in table.columns])
    return buf.getvalue()


def render_report(report, fmt):
    if fmt == "csv":
        cols = ["name", "estimate", "target", "stderr", "z", "pass"]
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(cols)
        for c in report["checks"]:
            w.writerow([_fmt(c[k]) for k in cols])
        return buf.getvalue()
    return json.dumps(report, indent=2) + "\n"


def _emit(text, path):
    if path:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- argument parsing -------------------------------------------------------

def _add_common(p, samples_default):
    p.add_argument("--model", choices=ch.MODELS, default="rank_one",
                   help="correlation model (default: rank_one)")
    p.add_argument("--n", type=int, default=2, help="block length N (default: 2)")
    p.add_argument("--taps", default=None,
                   help="comma-separated circulant tap powers, e.g. 3,1")
    p.add_argument("--snr-db", default="0:80:5",
                   help="SNR grid in dB: start:stop:step, a,b,c or one value "
                        "(default: 0:80:5)")
    p.add_argument("--rho0", default="sqrt",
                   help="input-norm floor for the rank-one upper bound: a number "
                        "or 'sqrt' for sqrt(rho) (default: sqrt)")
    p.add_argument("--samples", type=int, default=samples_default,
                   help=f"Monte-Carlo samples (default: {samples_default})")
    p.add_argument("--seed", type=int, default=0, help="root seed (default: 0)")
    p.add_argument("--out", default=None, help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default=None,
                   help="output format (default: csv; json for mc-verify)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="noncoh-cap",
        description="Capacity bounds and high-SNR expansions for noncoherent "
                    "correlated block-fading channels (nats per channel use). "
                    "Worker threads are capped by $NONCOH_CAP_THREADS.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext, samples in (
            ("asymptote", "pre-log and high-SNR capacity expansion", 100_000),
            ("bounds", "finite-SNR lower/upper bounds", 100_000),
            ("sweep", "bounds, asymptote and Monte-Carlo duality value", 100_000),
            ("mc-verify", "Monte-Carlo oracle suite (exit 1 on failure)", 1_000_000)):
        p = sub.add_parser(name, help=helptext)
        _add_common(p, samples)
        if name == "mc-verify":
            p.add_argument("--corrupt-constant", action="store_true",
                           help=argparse.SUPPRESS)
    sub.add_parser("selftest", help="run the acceptance checks (exit 1 on failure)")
    return parser


def config_from_args(args):
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    return SweepConfig(model=args.model, n=args.n, taps=_parse_taps(args.taps),
                       snr_db=parse_grid(args.snr_db), rho0=_parse_rho0(args.rho0),
                       samples=args.samples, seed=args.seed, out=args.out,
                       format=args.format or ("json" if args.command == "mc-verify" else "csv"))


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.command == "selftest":
        return EXIT_OK if cmd_selftest() else EXIT_FAIL
    try:
        cfg = config_from_args(args)
        if args.command == "mc-verify":
            report, ok = cmd_mc_verify(cfg, corrupt=args.corrupt_constant)
            _emit(render_report(report, cfg.format), cfg.out)
            return EXIT_OK if ok else EXIT_FAIL
        cmd = {"asymptote": cmd_asymptote, "bounds": cmd_bounds, "sweep": cmd_sweep}
        table = cmd[args.command](cfg)
    except UsageError as exc:
        print(f"noncoh-cap: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(render(table, cfg.format), cfg.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
