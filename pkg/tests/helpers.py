"""Shared strategies, a sympy oracle for operator actions, and CLI helpers."""
import io
import json
import random

import jsonschema

import sympy as sp
from hypothesis import strategies as st

from diffops.cli import EXIT_CODES, main
from diffops.orepoly import OrePoly
from diffops.ratfunc import RatFunc, fmpq_to_fraction
from diffops.sampling import random_operator, random_ratfunc
from diffops.schemas import envelope

xs = sp.Symbol("x")
F = sp.Function("f")(xs)


def to_sympy(r: RatFunc):
    num = sum(sp.Rational(*_pq(c)) * xs**k for k, c in enumerate(r.num.coeffs()))
    den = sum(sp.Rational(*_pq(c)) * xs**k for k, c in enumerate(r.den.coeffs()))
    return num / den


def _pq(c):
    fr = fmpq_to_fraction(c)
    return fr.numerator, fr.denominator


def sym_apply(op: OrePoly, expr):
    """Oracle: sum c_i * d^i expr / dx^i computed by sympy."""
    return sum(to_sympy(c) * sp.diff(expr, xs, i) for i, c in enumerate(op.coeffs))


def sym_equal(e1, e2) -> bool:
    return sp.cancel(sp.together(e1 - e2)) == 0


def sym_adjoint_apply(op: OrePoly, expr):
    """Oracle for the formal adjoint: sum (-d/dx)^i (c_i expr)."""
    return sum((-1) ** i * sp.diff(to_sympy(c) * expr, xs, i) for i, c in enumerate(op.coeffs))


seeds = st.integers(min_value=0, max_value=2**32 - 1)


@st.composite
def ratfuncs(draw, deg=2):
    return random_ratfunc(random.Random(draw(seeds)), deg, deg)


@st.composite
def operators(draw, max_order=3, deg=2):
    return random_operator(random.Random(draw(seeds)), max_order, deg)


M2 = '{"size":2,"rows":[["D","x"],["1","D"]]}'
SING = '{"size":2,"rows":[["D","D"],["D","D"]]}'
ZERO2 = '{"size":2,"rows":[["0","0"],["0","0"]]}'

# command -> (valid inputs, precondition-violating inputs, malformed inputs)
CLI_CASES = {
    "gcd": (["D^2", "D"], ["0", "0"], ["D^2", "D)"]),
    "bezout": (["D+x", "D"], ["0", "0"], ["D", "*"]),
    "lcm": (["D", "D+x"], ["0", "D"], ["D", "x^"]),
    "divide": (["x*D^2", "D+1"], ["D", "0"], ["D", ""]),
    "adjoint": (["x*D"], None, ["D^x"]),
    "minfrac": (["D^2", "D"], ["D", "0"], ["D", "q"]),
    "convert": (["D", "D+x"], ["D", "0"], ["(D", "x"]),
    "equal": (["D^2", "D", "D", "1"], ["D", "0", "D", "1"], ["D", "D", "D"]),
    "ddet-deg": ([M2], None, ['{"size":2}']),
    "hermite": ([M2], None, ["[[1,2],[3]]"]),
    "regularize": ([ZERO2, M2], [M2, SING], [M2, "{"]),
    "witness-thm33": (["x", "D", "x^2", "x^4/4"], ["D", "D", "1", "1"], ["x", "D", "x^2"]),
    "witness-cor34": (["D", "1", "x", "1"], ["D", "1", "x", "x"], ["D", "1", "x", "1/D"]),
    "isotropy": (["D", "1", "x", "1"], ["D^2", "D", "0", "0"], ["D", "1", "x"]),
    "kernel-poly": (["x^2*D^2 - 2*x*D + 2"], ["0"], ["D", "D"]),
    "selftest": ([], None, ["extra"]),
}


def run_cli(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_cli_json(*argv):
    """Run with --json; the document is validated against its schema."""
    code, text = run_cli(*argv, "--json")
    doc = json.loads(text)
    jsonschema.validate(doc, envelope(doc["command"]))
    return code, doc


def check_cli_contract(command) -> list[str]:
    """Exit codes and statuses for valid, invalid and malformed inputs."""
    valid, invalid, malformed = CLI_CASES[command]
    extra = ["--trials", "2"] if command == "selftest" else []
    problems = []
    expectations = [(valid + extra, "ok"), (malformed, "parse-error")]
    if invalid is not None:
        expectations.append((invalid, "precondition-violated"))
    for inputs, status in expectations:
        code, doc = run_cli_json(command, *inputs)
        if code != EXIT_CODES[status] or doc["status"] != status:
            problems.append(f"{command} {inputs}: got {code}/{doc['status']}, want {status}")
    return problems
