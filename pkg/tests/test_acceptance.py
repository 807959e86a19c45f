"""Acceptance criteria 1-11, each at its stated trial count and time limit.

One PASS/FAIL line per criterion is printed in the pytest summary (and on
stdout when this file is run directly).
"""
import time

import pytest

from diffops.cli import COMMANDS
from diffops.selftest import run_suite
from helpers import check_cli_contract

RESULTS: dict[int, str] = {}

# number -> (title, suites run with their default trial counts, seconds allowed)
CRITERIA = {
    1: ("Euclid/Bezout, 500 scalar pairs", ["euclid"], 60),
    2: ("LCM and order formula, 200 scalar pairs", ["lcm"], 30),
    3: ("common-factor recovery roundtrip, 200 trials", ["fraction-roundtrip"], 60),
    4: ("degree invariant, 100 scalar + 50 matrix trials", ["degree-scalar", "degree-matrix"], 120),
    5: ("intersection witness, 200 natural + 200 cyclic trials", ["witness-natural", "witness-cyclic"], 120),
    6: ("integration by parts, 300 trials", ["integration-by-parts"], 60),
    7: ("isotropy and maximality, 100 pairs", ["isotropy"], 60),
    8: ("Hermite certification, 100 matrices + 50 products", ["hermite", "ddet-product"], 120),
    9: ("crafted kernel checks", ["kernels"], 10),
    10: ("regularization, 100 + 100 trials at size 2", ["regularize", "regularize-pair"], 120),
}


def _record(number, title, ok, detail):
    RESULTS[number] = f"[{'PASS' if ok else 'FAIL'}] #{number:>2} {title}: {detail}"
    print(RESULTS[number])


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    title, suites, limit = CRITERIA[number]
    start = time.perf_counter()
    reports = [run_suite(name, seed=0) for name in suites]
    elapsed = time.perf_counter() - start
    passes = sum(r.passes for r in reports)
    trials = sum(r.trials for r in reports)
    failures = [f for r in reports for f in r.failures]
    ok = not failures and passes == trials and elapsed < limit
    _record(number, title, ok, f"{passes}/{trials} trials, {elapsed:.1f}s (limit {limit}s)")
    assert not failures, failures[:3]
    assert elapsed < limit


def test_criterion_11_cli_contract():
    title = "CLI contract: 500 roundtrips + exit codes of every command"
    start = time.perf_counter()
    report = run_suite("parse-roundtrip", 500, seed=0)
    problems = [f["error"] for f in report.failures]
    for command in COMMANDS:
        problems += check_cli_contract(command)
    elapsed = time.perf_counter() - start
    detail = f"{report.passes}/500 roundtrips, {len(COMMANDS)} commands, {elapsed:.1f}s"
    _record(11, title, not problems, detail)
    assert not problems, problems[:3]


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
