import subprocess
import sys

import pytest
from hypothesis import given, settings

from diffops.cli import COMMANDS, EXIT_CODES
from diffops.errors import ParseError
from diffops.orepoly import OrePoly
from diffops.parsing import parse_matrix, parse_operator
from diffops.ratfunc import X
from helpers import CLI_CASES as CASES, ZERO2, check_cli_contract, operators, run_cli, run_cli_json

D = OrePoly.D()


run, run_json = run_cli, run_cli_json


def test_parse_examples():
    assert parse_operator("D*x") == X * D + 1
    assert parse_operator("x*D") == X * D
    p = parse_operator("(1/x)*D^2 + 3")
    assert p.coeffs == (3, 0, 1 / X)
    assert str(p) == "(1/x)*D^2 + 3"


def test_parse_precedence_and_signs():
    assert parse_operator("-x^2") == -(X * X)
    assert parse_operator("2*-D") == -2 * D
    assert parse_operator("3/2*x/(x + 1)") == OrePoly.coerce(3 * X / (2 * (X + 1)))
    assert parse_operator("(D + x)^2") == (D + X) * (D + X)
    assert parse_operator(" D ^ 0 ") == OrePoly.coerce(1)


@pytest.mark.parametrize("text, pos", [
    ("", 0), ("D +", 3), ("1/D", 2), ("1/(x-x)", 2), ("x^-1", 2), ("(x", 2), ("y", 0), ("2 3", 2),
])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_operator(text)
    assert info.value.position == pos


@given(operators(4))
@settings(max_examples=200, deadline=None)
def test_print_parse_roundtrip(p):
    assert parse_operator(str(p)) == p


def test_matrix_json():
    A = parse_matrix('{"size": 2, "rows": [["D", "0"], ["0", "D^2"]]}')
    assert A.shape == (2, 2)
    for bad in ('{"size": 2, "rows": [["D"]]}', '{"rows": 3}', "[[", '{"size": 0, "rows": []}'):
        with pytest.raises(ParseError):
            parse_matrix(bad)


def test_cli_examples():
    code, doc = run_json("gcd", "--side", "right", "D^2", "D")
    assert code == 0
    assert (doc["result"]["d"], doc["result"]["u"], doc["result"]["v"]) == ("D", "0", "1")
    code, doc = run_json("ddet-deg", '{"size":2,"rows":[["D","0"],["0","D^2"]]}')
    assert doc["result"]["ddet_degree"] == 3
    code, text = run("ddet-deg", '{"size":2,"rows":[["D","D"],["D","D"]]}')
    assert code == 0 and "singular" in text


def test_every_command_is_covered():
    assert set(CASES) == set(COMMANDS)


@pytest.mark.parametrize("command", sorted(CASES))
def test_exit_codes(command):
    assert check_cli_contract(command) == []


def test_search_failure_exit_code():
    code, doc = run_json("regularize", ZERO2, '{"size":2,"rows":[["1","0"],["0","1"]]}', "--budget", "1")
    assert code == EXIT_CODES["search-failure"] and doc["status"] == "search-failure"


def test_unknown_command_and_option():
    assert run("frobnicate", "D")[0] == EXIT_CODES["parse-error"]
    assert run("gcd", "D", "D", "--colour")[0] == EXIT_CODES["parse-error"]
    assert run()[0] == EXIT_CODES["parse-error"]


def test_operators_may_start_with_minus():
    code, doc = run_json("adjoint", "-x*D")
    assert code == 0 and doc["result"]["adjoint"] == "x*D + 1"


def test_witness_trace_is_complete():
    code, doc = run_json("witness-thm33", "D+x", "D^2", "1", "1", "--modulus", "D^3 + 1")
    assert code == 1  # a x != b y in this module
    code, doc = run_json("witness-thm33", "x", "D", "x^2", "x^4/4")
    assert all(doc["result"]["trace"]["identities"].values())


def test_minfrac_certificate():
    code, doc = run_json("minfrac", "D^2", "D")
    r = doc["result"]
    assert (r["num"], r["den"], r["gcd_stripped"]) == ("D", "1", "D")
    u, v = (parse_operator(r["bezout"][k]) for k in ("u", "v"))
    assert u * D + v * 1 == 1


def test_kernel_command():
    code, doc = run_json("kernel-poly", "x^2*D^2 - 2*x*D + 2", "--degree", "5")
    assert doc["result"]["basis"] == ["x", "x^2"]


def test_selftest_reports_suites():
    code, doc = run_json("selftest", "--seed", "42", "--trials", "3")
    assert code == 0 and doc["result"]["ok"]
    assert all(s["passes"] == s["trials"] for s in doc["result"]["suites"])


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "diffops.cli", "adjoint", "x*D"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "adjoint = -x*D - 1"
