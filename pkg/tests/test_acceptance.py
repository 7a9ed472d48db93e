"""Acceptance criteria C1-C12, one test each.

Each test prints a PASS/FAIL line with its measurement and wall time.
Run directly (``python3 tests/test_acceptance.py``) for the bare matrix.
"""

import os
import subprocess
import sys
import time

import pytest

from noncoh_cap import selftest

BUDGET_S = {"C1": 5, "C2": 5, "C3": 1, "C4": 1, "C5": 1, "C6": 10, "C7": 10,
            "C8": 10, "C9": 5, "C10": 10, "C11": 1, "C12": 60}


def cli_bytes(threads, *argv):
    env = dict(os.environ, NONCOH_CAP_THREADS=threads)
    res = subprocess.run([sys.executable, "-m", "noncoh_cap", *argv],
                         capture_output=True, env=env, check=False)
    return res.returncode, res.stdout


def c12_cli_reproducible():
    runs = {}
    for t in ("1", "4"):
        runs[t] = (cli_bytes(t, "bounds", "--model", "rank_one", "--n", "3", "--seed", "5"),
                   cli_bytes(t, "mc-verify", "--samples", "200000", "--seed", "7"))
    same = runs["1"] == runs["4"]
    codes = [c for pair in runs.values() for c, _ in pair]
    ok_in_proc, _ = selftest.c12_reproducible()
    return same and codes == [0, 0, 0, 0] and ok_in_proc, \
        f"CLI bytes identical: {same}, exit codes {codes}, in-process identical: {ok_in_proc}"


CRITERIA = [(cid, title, c12_cli_reproducible if cid == "C12" else fn)
            for cid, title, fn in selftest.CHECKS]


def evaluate(cid, fn):
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    in_time = dt <= BUDGET_S[cid]
    return bool(ok) and in_time, f"{detail}; {dt:.2f}s (budget {BUDGET_S[cid]}s)"


@pytest.mark.parametrize("cid, title, fn", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(cid, title, fn, capsys):
    ok, detail = evaluate(cid, fn)
    with capsys.disabled():
        print(f"\n{cid:<4} {'PASS' if ok else 'FAIL'}  {title}: {detail}")
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for cid, title, fn in CRITERIA:
        ok, detail = evaluate(cid, fn)
        failed += not ok
        print(f"{cid:<4} {'PASS' if ok else 'FAIL'}  {title}: {detail}")
    sys.exit(1 if failed else 0)
