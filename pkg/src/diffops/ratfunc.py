"""Exact arithmetic in the differential field Q(x) with derivation d/dx.

Polynomials are FLINT ``fmpq_poly`` objects; :class:`RatFunc` keeps a
canonical reduced quotient of two of them, so equality is structural.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from flint import fmpq, fmpq_poly

from .errors import NonInvertibleError

Poly = fmpq_poly

_ZERO = fmpq_poly([])
_ONE = fmpq_poly([1])
_X = fmpq_poly([0, 1])


def to_fmpq(c) -> fmpq:
    if isinstance(c, fmpq):
        return c
    if isinstance(c, int):
        return fmpq(c)
    if isinstance(c, Rational):
        return fmpq(int(c.numerator), int(c.denominator))
    raise TypeError(f"not an exact rational: {c!r}")


def fmpq_to_fraction(c: fmpq) -> Fraction:
    return Fraction(int(c.p), int(c.q))


def poly(coeffs) -> Poly:
    """Build a polynomial from low-to-high coefficients (ints, Fractions or fmpq)."""
    return fmpq_poly([to_fmpq(c) for c in coeffs])


def poly_key(p: Poly) -> tuple:
    return tuple((int(c.p), int(c.q)) for c in p.coeffs())


def format_poly(p: Poly) -> str:
    """Render a polynomial in the textual grammar, highest power first."""
    if p.is_zero():
        return "0"
    coeffs = p.coeffs()
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        neg = c < 0
        a = -c if neg else c
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        parts.append(("-" if neg else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _nterms(p: Poly) -> int:
    return sum(1 for c in p.coeffs() if c != 0)


class RatFunc:
    """Element of Q(x) in canonical form: gcd(num, den) = 1 and den monic."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=None, *, _canonical: bool = False):
        if not isinstance(num, fmpq_poly):
            num = fmpq_poly([to_fmpq(num)])
        if den is None:
            den = _ONE
        elif not isinstance(den, fmpq_poly):
            den = fmpq_poly([to_fmpq(den)])
        if not _canonical:
            if den.is_zero():
                raise NonInvertibleError("rational function with zero denominator")
            if num.is_zero():
                den = _ONE
            else:
                g = num.gcd(den)
                if not g.is_one():
                    num = num // g
                    den = den // g
                lc = den.leading_coefficient()
                if lc != 1:
                    num = num / lc
                    den = den / lc
        self.num = num
        self.den = den
        self._hash = None

    # constructors
    @classmethod
    def x(cls) -> "RatFunc":
        return cls(_X, _canonical=True)

    @classmethod
    def coerce(cls, value) -> "RatFunc":
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, fmpq_poly):
            return cls(value, _canonical=True)
        return cls(fmpq_poly([to_fmpq(value)]), _canonical=True)

    # predicates
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.den.is_one() and self.num.degree() <= 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return fmpq_to_fraction(self.num.coeffs()[0]) if not self.is_zero() else Fraction(0)

    # arithmetic
    def __add__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        b, d = self.den, other.den
        if b == d:
            return RatFunc(self.num + other.num, b)
        if b.is_one():
            return RatFunc(self.num * d + other.num, d, _canonical=True)
        if d.is_one():
            return RatFunc(self.num + other.num * b, b, _canonical=True)
        # Henrici: only gcds with g = gcd(b, d) are needed
        g = b.gcd(d)
        if g.is_one():
            return RatFunc(self.num * d + other.num * b, b * d, _canonical=True)
        bg, dg = b // g, d // g
        t = self.num * dg + other.num * bg
        if t.is_zero():
            return RatFunc()
        g2 = t.gcd(g)
        if not g2.is_one():
            t = t // g2
            g = g // g2
        return RatFunc(t, bg * g * dg, _canonical=True)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return RatFunc.coerce(other) - self

    def __mul__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatFunc()
        a, b, c, d = self.num, self.den, other.num, other.den
        if b.is_one() and d.is_one():
            return RatFunc(a * c, _ONE, _canonical=True)
        # Henrici: cross-cancel, the result is then already reduced
        if not d.is_one():
            g1 = a.gcd(d)
            if not g1.is_one():
                a, d = a // g1, d // g1
        if not b.is_one():
            g2 = c.gcd(b)
            if not g2.is_one():
                c, b = c // g2, b // g2
        num, den = a * c, b * d
        lc = den.leading_coefficient()
        if lc != 1:
            num, den = num / lc, den / lc
        return RatFunc(num, den, _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise NonInvertibleError("division by the zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n, _canonical=True)

    def leading_coefficient(self) -> fmpq:
        """Ratio of the leading coefficients of numerator and denominator."""
        return self.num.leading_coefficient()

    # comparison / hashing
    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self == other

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((poly_key(self.num), poly_key(self.den)))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __call__(self, point):
        """Evaluate at a rational point."""
        point = to_fmpq(point)
        d = self.den(point)
        if d == 0:
            raise NonInvertibleError(f"pole at {point}")
        return fmpq_to_fraction(self.num(point) / d)

    def __str__(self):
        if self.den.is_one():
            return format_poly(self.num)
        n = format_poly(self.num)
        if _nterms(self.num) > 1:
            n = f"({n})"
        d = format_poly(self.den)
        if _nterms(self.den) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RatFunc({self})"


def derive(f: RatFunc) -> RatFunc:
    """d/dx by the quotient rule."""
    if f.den.is_one():
        return RatFunc(f.num.derivative(), _ONE, _canonical=True)
    return RatFunc(f.num.derivative() * f.den - f.num * f.den.derivative(), f.den * f.den)


def ratfunc_arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


@dataclass(frozen=True)
class HermiteDecomposition:
    integrated: RatFunc
    residue_part: RatFunc


def _solve_bezout(a: Poly, b: Poly, c: Poly) -> tuple[Poly, Poly]:
    """Return (s, t) with s*a + t*b = c and deg s < deg b; needs gcd(a, b) | c."""
    g, s, t = a.xgcd(b)
    q, r = divmod(c, g)
    if not r.is_zero():
        raise ArithmeticError("right-hand side not in the ideal")
    s = s * q
    t = t * q
    if b.degree() > 0:
        k, s = divmod(s, b)
        t = t + k * a
    return s, t


def hermite_reduce(g: RatFunc) -> HermiteDecomposition:
    """Split g = h' + r with r proper and squarefree in the denominator.

    Mack's linear variant of Hermite reduction; the polynomial part of g is
    integrated termwise.
    """
    if g.is_zero():
        return HermiteDecomposition(RatFunc(), RatFunc())
    a, d = g.num, g.den
    poly_part, a = divmod(a, d)
    integrated = RatFunc(poly_part.integral(), _ONE, _canonical=True)
    dm = d.gcd(d.derivative())
    ds = d // dm
    while dm.degree() > 0:
        dm2 = dm.gcd(dm.derivative())
        dms = dm // dm2
        # B * (-ds*dm'/dm) + C * dms = a
        b, c = _solve_bezout(-(ds * dm.derivative()) // dm, dms, a)
        a = c - (b.derivative() * ds) // dms
        integrated = integrated + RatFunc(b, dm)
        dm = dm2
    residue = RatFunc(a, ds)
    return HermiteDecomposition(integrated, residue)


def is_total_derivative(g: RatFunc) -> bool:
    """True iff g = h' for some h in Q(x)."""
    return hermite_reduce(g).residue_part.is_zero()


def is_squarefree(p: Poly) -> bool:
    return p.degree() <= 0 or p.gcd(p.derivative()).is_one()


X = RatFunc.x()
ONE = RatFunc(1)
ZERO = RatFunc(0)
