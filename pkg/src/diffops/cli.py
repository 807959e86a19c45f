"""Command line front end.

Exit codes: 0 ok, 1 precondition violated, 2 parse error (including bad
usage), 3 search failure, 4 a self-check failed.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import fractions as fr
from . import modules as md
from . import ring
from . import selftest
from .errors import InternalInconsistency, ParseError, PreconditionError, SearchFailure
from .orematrix import OreMatrix, ddet_degree, regularize, row_hermite
from .orepoly import OrePoly, divide
from .parsing import format_element, format_matrix, parse_element, parse_operator, parse_ratfunc
from .ratfunc import format_poly

EXIT_CODES = {
    "ok": 0,
    "precondition-violated": 1,
    "parse-error": 2,
    "search-failure": 3,
    "check-failed": 4,
}

# command -> accepted numbers of positional inputs
ARITY = {
    "gcd": (2,), "bezout": (2,), "lcm": (2,), "divide": (2,), "adjoint": (1,),
    "minfrac": (2,), "convert": (2,), "equal": (4,), "ddet-deg": (1,), "hermite": (1,),
    "regularize": (2,), "witness-thm33": (4,), "witness-cor34": (4,), "isotropy": (2, 4),
    "kernel-poly": (1,), "selftest": (0,),
}

COMMANDS = tuple(ARITY)


@dataclass
class CommandResult:
    status: str
    payload: dict = field(default_factory=dict)
    human_text: str = ""

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]


def _pair(inputs):
    a, b = (parse_element(t) for t in inputs[:2])
    ring.same_kind(a, b)
    return a, b


def _module(args, sample):
    if args.modulus is not None:
        return md.CyclicModule(parse_operator(args.modulus))
    return md.NaturalModule(sample.shape[0] if isinstance(sample, OreMatrix) else 1)


def _module_element(text: str, V):
    if isinstance(V, md.CyclicModule):
        return parse_operator(text)
    if text.lstrip().startswith("["):
        try:
            items = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid vector JSON: {exc.msg}", exc.pos) from exc
        if not isinstance(items, list):
            raise ParseError("vector must be a JSON list", 0)
        return V.coerce([parse_ratfunc(str(t)) for t in items])
    return V.coerce(parse_ratfunc(text))


def _fmt_module(x, V):
    out = V.format(x)
    return out if isinstance(out, str) else out if len(out) > 1 else out[0]


def _frac(f: fr.OperatorFraction) -> dict:
    return {"num": format_element(f.num), "den": format_element(f.den), "side": f.side}


def _cmd_gcd(args, inputs):
    a, b = _pair(inputs)
    g = ring.gcd(a, b, args.side)
    return {"d": g.d, "u": g.u, "v": g.v, "a1": g.a1, "b1": g.b1, "side": g.side}


def _cmd_bezout(args, inputs):
    a, b = _pair(inputs)
    g = ring.gcd(a, b, args.side)
    if g.side == "right":
        ok, identity = g.u * a + g.v * b == g.d, "d = u*a + v*b"
    else:
        ok, identity = a * g.u + b * g.v == g.d, "d = a*u + b*v"
    if not ok:
        raise InternalInconsistency("Bezout identity failed")
    return {"d": g.d, "u": g.u, "v": g.v, "identity": identity, "verified": True}


def _cmd_lcm(args, inputs):
    a, b = _pair(inputs)
    m, a1, b1 = ring.lcm(a, b, args.side)
    return {"m": m, "a1": a1, "b1": b1, "side": "left" if args.side == "left" else "right"}


def _cmd_divide(args, inputs):
    a, b = (parse_operator(t) for t in inputs)
    r = divide(a, b, args.side)
    return {"quotient": r.quotient, "remainder": r.remainder, "side": r.side}


def _cmd_adjoint(args, inputs):
    return {"adjoint": parse_element(inputs[0]).adjoint()}


def _fraction_from(args, num, den):
    a, b = parse_element(num), parse_element(den)
    ring.same_kind(a, b)
    return fr.OperatorFraction(a, b, args.side)


def _cmd_minfrac(args, inputs):
    f = _fraction_from(args, *inputs)
    stripped = ring.gcd(f.num, f.den, f.side).d
    fmin = fr.make_minimal(f)
    # Bezout certificate of coprimality for the minimal pair
    g = ring.gcd(fmin.num, fmin.den, f.side)
    if f.side == "right":
        dinv = ring.exact_quotient(g.d.one_like(), g.d, "left")
        u, v = dinv * g.u, dinv * g.v
    else:
        dinv = ring.exact_quotient(g.d.one_like(), g.d, "right")
        u, v = g.u * dinv, g.v * dinv
    out = _frac(fmin)
    out.update(gcd_stripped=format_element(stripped), bezout={"u": u, "v": v})
    return out


def _cmd_convert(args, inputs):
    return {"fraction": _frac(fr.convert_side(_fraction_from(args, *inputs)))}


def _cmd_equal(args, inputs):
    f, g = _fraction_from(args, *inputs[:2]), _fraction_from(args, *inputs[2:])
    return {"equal": fr.fraction_equal(f, g)}


def _cmd_ddet(args, inputs):
    e = parse_element(inputs[0])
    return {"ddet_degree": ring.degree(e)}


def _cmd_hermite(args, inputs):
    M = parse_element(inputs[0])
    if not isinstance(M, OreMatrix):
        M = OreMatrix([[M]])
    cert = row_hermite(M)
    return {"H": format_matrix(cert.H), "U": format_matrix(cert.U),
            "pivots": [list(p) for p in cert.pivots], "ddet_degree": ddet_degree(M)}


def _cmd_regularize(args, inputs):
    a, b = _pair(inputs)
    q = regularize(a, b, args.side, budget=args.budget, seed=args.seed)
    total = a + q * b if args.side == "left" else a + b * q
    return {"q": q, "sum": total, "side": args.side}


def _cmd_intersection_witness(args, inputs):
    a, b = _pair(inputs)
    V = _module(args, a)
    x, y = (_module_element(t, V) for t in inputs[2:])
    z, tr = md.intersection_witness(a, b, x, y, V, seed=args.seed)
    trace = {k: getattr(tr, k) for k in ("a", "b", "a1", "b1", "m", "u", "v", "p", "q", "shift",
                                         "a1_original")}
    trace.update(u_regular=tr.u_regular, v_regular=tr.v_regular, identities=tr.identities())
    return {"z": _fmt_module(z, V), "trace": trace}


def _cmd_adjoint_witness(args, inputs):
    a, b = _pair(inputs)
    V = _module(args, a)
    x, y = (_module_element(t, V) for t in inputs[2:])
    z = md.adjoint_relation_witness(a, b, x, y, args.eps, V, seed=args.seed)
    return {"z": _fmt_module(z, V)}


def _cmd_isotropy(args, inputs):
    a, b = _pair(inputs)
    out = {"skew": md.skew_pair_check(a, b), "module_action": None}
    if args.modulus is not None and not isinstance(a, OreMatrix):
        out["module_action"] = md.skew_pair_acts_zero(a, b, md.CyclicModule(parse_operator(args.modulus)))
    if len(inputs) == 4:
        V = _module(args, a)
        y1, y2 = (_module_element(t, V) for t in inputs[2:])
        out["z"] = _fmt_module(md.maximal_isotropy_witness(a, b, y1, y2, V, seed=args.seed), V)
    return out


def _cmd_kernel(args, inputs):
    b = parse_operator(inputs[0])
    basis = md.kernel_polynomial(b, args.degree)
    return {"basis": [format_poly(p) for p in basis], "degree_bound": args.degree}


def _cmd_selftest(args, inputs):
    reports = selftest.run_all(args.trials, args.seed)
    return {"seed": args.seed, "ok": all(r.ok for r in reports), "suites": [r.as_dict() for r in reports]}


HANDLERS = {
    "gcd": _cmd_gcd, "bezout": _cmd_bezout, "lcm": _cmd_lcm, "divide": _cmd_divide,
    "adjoint": _cmd_adjoint, "minfrac": _cmd_minfrac, "convert": _cmd_convert, "equal": _cmd_equal,
    "ddet-deg": _cmd_ddet, "hermite": _cmd_hermite, "regularize": _cmd_regularize,
    "witness-thm33": _cmd_intersection_witness, "witness-cor34": _cmd_adjoint_witness, "isotropy": _cmd_isotropy,
    "kernel-poly": _cmd_kernel, "selftest": _cmd_selftest,
}


def _jsonable(v):
    if isinstance(v, (OrePoly, OreMatrix)):
        return format_element(v)
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _human(payload, indent="") -> str:
    lines = []
    for k, v in payload.items():
        if isinstance(v, dict) and "rows" in v:
            v = json.dumps(v)
        if isinstance(v, dict):
            lines.append(f"{indent}{k}:")
            lines.append(_human(v, indent + "  "))
        elif k == "suites":
            for s in v:
                mark = "PASS" if s["passes"] == s["trials"] else "FAIL"
                lines.append(f"{indent}{mark} {s['name']}: {s['passes']}/{s['trials']} ({s['seconds']}s)")
        elif v is None:
            lines.append(f"{indent}{k} = singular" if k == "ddet_degree" else f"{indent}{k} = n/a")
        else:
            lines.append(f"{indent}{k} = {v}")
    return "\n".join(lines)


def dispatch(command: str, args: argparse.Namespace, inputs: list[str]) -> CommandResult:
    """Run one command; every failure is mapped to a status."""
    try:
        if command not in HANDLERS:
            raise ParseError(f"unknown command {command!r}", 0)
        if len(inputs) not in ARITY[command]:
            want = " or ".join(map(str, ARITY[command]))
            raise ParseError(f"{command} takes {want} inputs, got {len(inputs)}", 0)
        payload = _jsonable(HANDLERS[command](args, inputs))
    except ParseError as exc:
        return CommandResult("parse-error", {"error": str(exc)}, f"parse error: {exc}")
    except SearchFailure as exc:
        return CommandResult("search-failure", {"error": str(exc)}, f"search failure: {exc}")
    except InternalInconsistency as exc:
        return CommandResult("check-failed", {"error": str(exc)}, f"check failed: {exc}")
    except (PreconditionError, ZeroDivisionError) as exc:
        return CommandResult("precondition-violated", {"error": str(exc)}, f"precondition violated: {exc}")
    status = "check-failed" if command == "selftest" and not payload["ok"] else "ok"
    return CommandResult(status, payload, _human(payload))


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message, 0)


def build_parser() -> argparse.ArgumentParser:
    p = _ArgParser(prog="diffops", description="Exact algebra of differential operators over Q(x).")
    p.add_argument("command", help=", ".join(COMMANDS))
    p.add_argument("inputs", nargs="*", help="operators, matrices (JSON) or module elements")
    p.add_argument("--side", choices=("left", "right"), default="right")
    p.add_argument("--json", action="store_true", help="print a JSON document")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=None, help="trials per selftest suite")
    p.add_argument("--max-order", "--degree", dest="degree", type=int, default=5,
                   help="degree bound for kernel-poly")
    p.add_argument("--budget", type=int, default=10_000, help="candidate budget for regularize")
    p.add_argument("--modulus", default=None, help="work in the cyclic module R/R*c")
    p.add_argument("--eps", type=Fraction, default=Fraction(-1), help="sign for witness-cor34")
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    want_json = "--json" in argv
    try:
        args, extra = build_parser().parse_known_args(argv)
        # operators may start with '-', e.g. "-x*D"
        inputs = args.inputs + extra
        if any(t.startswith("--") for t in extra):
            raise ParseError(f"unknown option {extra[0]}", 0)
        result = dispatch(args.command, args, inputs)
        command = args.command
    except ParseError as exc:
        result = CommandResult("parse-error", {"error": str(exc)}, f"parse error: {exc}")
        command = argv[0] if argv and not argv[0].startswith("-") else ""
    if want_json:
        doc = {"command": command, "status": result.status}
        if result.status == "ok" or (command == "selftest" and "suites" in result.payload):
            doc["result"] = result.payload
        if "error" in result.payload:
            doc["error"] = result.payload["error"]
        elif result.status != "ok":
            doc["error"] = "one or more suites failed"
        print(json.dumps(doc), file=out)
    else:
        print(result.human_text, file=out)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
