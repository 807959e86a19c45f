"""Text syntax for operators and operator matrices.

Grammar (whitespace ignored)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := ['-'] base ('^' uint)?
    base   := uint | 'x' | 'D' | '(' expr ')'

Products are expanded through the ring multiplication as they are parsed, so
``D*x`` and ``x*D + 1`` give the same value.  A divisor must be a nonzero
element of K (no ``D`` in any denominator).
"""
from __future__ import annotations

import json
import re

from .errors import NonInvertibleError, ParseError
from .orematrix import OreMatrix
from .orepoly import OrePoly
from .ratfunc import RatFunc

_TOKEN = re.compile(r"\s*(?:(\d+)|(\S))")


def _tokenize(text: str):
    tokens = []
    for m in _TOKEN.finditer(text):
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            ch = m.group(2)
            if ch not in "+-*/^()xD":
                raise ParseError(f"unexpected character {ch!r}", m.start(2))
            tokens.append((ch, ch, m.start(2)))
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> OrePoly:
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0)
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return value

    def expr(self) -> OrePoly:
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        value = self.term()
        if sign < 0:
            value = -value
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> OrePoly:
        value = self.factor()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if rhs.order > 0:
                    raise ParseError("divisor contains D", pos + 1)
                if rhs.is_zero():
                    raise ParseError("division by zero", pos + 1)
                value = value * OrePoly.coerce(rhs.coeffs[0].inverse())
        return value

    def factor(self) -> OrePoly:
        if self.peek()[0] == "-":
            self.take()
            return -self.factor()
        value = self.base()
        if self.peek()[0] == "^":
            self.take()
            _, exp, _ = self.take("int")
            value = value ** exp
        return value

    def base(self) -> OrePoly:
        kind, val, pos = self.peek()
        if kind == "int":
            self.take()
            return OrePoly.coerce(val)
        if kind == "x":
            self.take()
            return OrePoly.coerce(RatFunc.x())
        if kind == "D":
            self.take()
            return OrePoly.D()
        if kind == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        what = "end of input" if kind == "end" else repr(val)
        raise ParseError(f"expected a number, 'x', 'D' or '(', found {what}", pos)


def parse_operator(text: str) -> OrePoly:
    """Parse operator text into canonical form."""
    if not isinstance(text, str):
        raise ParseError("operator must be given as text", 0)
    try:
        return _Parser(text).parse()
    except NonInvertibleError as exc:
        raise ParseError(str(exc), 0) from exc


def parse_ratfunc(text: str) -> RatFunc:
    op = parse_operator(text)
    if op.order > 0:
        raise ParseError("expected a rational function, found an operator in D", 0)
    return op.coeffs[0] if op.coeffs else RatFunc()


def parse_matrix(text_or_obj) -> OreMatrix:
    """Matrix from JSON text or an already decoded object {"size", "rows"}."""
    obj = text_or_obj
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid matrix JSON: {exc.msg}", exc.pos) from exc
    if isinstance(obj, list):
        obj = {"size": len(obj), "rows": obj}
    if not isinstance(obj, dict) or "rows" not in obj:
        raise ParseError("matrix JSON needs a 'rows' field", 0)
    rows = obj["rows"]
    size = obj.get("size", len(rows) if isinstance(rows, list) else None)
    if not isinstance(size, int) or size < 1:
        raise ParseError("matrix size must be a positive integer", 0)
    if not isinstance(rows, list) or len(rows) != size or any(
            not isinstance(r, list) or len(r) != size for r in rows):
        raise ParseError(f"matrix rows do not form a {size}x{size} grid", 0)
    return OreMatrix([[parse_operator(e if isinstance(e, str) else str(e)) for e in r] for r in rows])


def parse_element(text: str):
    """Operator text, or matrix JSON when the text starts with '{' or '['."""
    if isinstance(text, str) and text.lstrip()[:1] in ("{", "["):
        return parse_matrix(text)
    return parse_operator(text)


def format_matrix(M: OreMatrix) -> dict:
    return {"size": M.shape[0], "rows": [[str(e) for e in row] for row in M.rows]}


def format_element(e):
    """JSON-ready form: operator text, or the matrix object."""
    if isinstance(e, OreMatrix):
        return format_matrix(e)
    return str(e)
