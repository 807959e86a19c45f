"""The ring K[D] of differential operators over K = Q(x).

Elements are finite sums c_0 + c_1 D + ... + c_n D^n with c_i in K and the
commutation rule D f = f D + f'.  Besides ring arithmetic this module provides
one-sided Euclidean division, extended gcds with Bezout cofactors, lcms,
Ore witnesses and the formal adjoint.

Side conventions (used everywhere in the package):

* right gcd ``d``:  Ra + Rb = Rd,   d = u a + v b,  a = a1 d,  b = b1 d
* left gcd ``d``:   aR + bR = dR,   d = a u + b v,  a = d a1,  b = d b1
* right lcm ``m``:  aR ∩ bR = mR,   m = a b1 = b a1
* left lcm ``m``:   Ra ∩ Rb = Rm,   m = b1 a = a1 b
* ``divide(a, b, "left")``:  a = q b + r  (quotient multiplies from the left)
* ``divide(a, b, "right")``: a = b q + r
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import DegenerateInputError, InternalInconsistency, NonInvertibleError
from .ratfunc import RatFunc, derive, poly

_ONE_POLY = poly([1])

ORDER_ZERO = float("-inf")

_SIDE_ALIASES = {
    "left": "left", "right": "right",
    "left-remainder": "left", "right-remainder": "right",
    "left-gcd": "left", "right-gcd": "right",
    "left-lcm": "left", "right-lcm": "right",
}


def normalize_side(side: str) -> str:
    try:
        return _SIDE_ALIASES[side]
    except KeyError:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}") from None


class OrePoly:
    """An element sum(c_i D^i) of K[D], stored as a tuple of RatFunc."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs=()):
        cs = [RatFunc.coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs: tuple[RatFunc, ...] = tuple(cs)
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: list) -> "OrePoly":
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        obj = cls.__new__(cls)
        obj.coeffs = tuple(coeffs)
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, value) -> "OrePoly":
        if isinstance(value, OrePoly):
            return value
        return cls((RatFunc.coerce(value),))

    @classmethod
    def D(cls) -> "OrePoly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, c, k: int) -> "OrePoly":
        return cls([RatFunc()] * k + [RatFunc.coerce(c)])

    # structure
    @property
    def order(self):
        return len(self.coeffs) - 1 if self.coeffs else ORDER_ZERO

    def lc(self) -> RatFunc:
        if not self.coeffs:
            raise DegenerateInputError("zero operator has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int) -> RatFunc:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else RatFunc()

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0].is_one()

    def is_unit(self) -> bool:
        return len(self.coeffs) == 1

    def is_regular(self) -> bool:
        # K[D] is a domain
        return bool(self.coeffs)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1].is_one()

    def zero_like(self) -> "OrePoly":
        return ZERO

    def one_like(self) -> "OrePoly":
        return ONE

    @property
    def degree(self):
        return self.order

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, OrePoly):
            try:
                other = OrePoly.coerce(other)
            except TypeError:
                return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return OrePoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return OrePoly._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, OrePoly):
            try:
                other = OrePoly.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return OrePoly.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, OrePoly):
            try:
                other = OrePoly.coerce(other)
            except TypeError:
                return NotImplemented
        return ore_mul(self, other)

    def __rmul__(self, other):
        return ore_mul(OrePoly.coerce(other), self)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not elements of K[D]")
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def scale_left(self, f: RatFunc) -> "OrePoly":
        """f * self for f in K (no commutation needed)."""
        if f.is_zero():
            return ZERO
        return OrePoly._raw([f * c for c in self.coeffs])

    def monic(self) -> "OrePoly":
        return self.scale_left(self.lc().inverse())

    def adjoint(self) -> "OrePoly":
        return adjoint(self)

    def __eq__(self, other):
        if isinstance(other, OrePoly):
            return self.coeffs == other.coeffs
        try:
            return self.coeffs == OrePoly.coerce(other).coeffs
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __bool__(self):
        return bool(self.coeffs)

    def __call__(self, f):
        """Apply the operator to a rational function: sum c_i f^(i)."""
        return apply_operator(self, RatFunc.coerce(f))

    def __str__(self):
        return format_operator(self)

    def __repr__(self):
        return f"OrePoly({self})"


ZERO = OrePoly()
ONE = OrePoly((1,))


def format_operator(a: OrePoly) -> str:
    """Canonical text form sum c_i(x)*D^i, highest power first."""
    if a.is_zero():
        return "0"
    pieces = []
    for i in range(len(a.coeffs) - 1, -1, -1):
        c = a.coeffs[i]
        if c.is_zero():
            continue
        cs = str(c)
        if i == 0:
            pieces.append(cs)
            continue
        mono = "D" if i == 1 else f"D^{i}"
        if c.is_one():
            pieces.append(mono)
        elif c == -1:
            pieces.append("-" + mono)
        elif c.is_polynomial() and sum(1 for k in c.num.coeffs() if k != 0) == 1:
            pieces.append(f"{cs}*{mono}")
        else:
            pieces.append(f"({cs})*{mono}")
    out = pieces[0]
    for p in pieces[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def _d_times(coeffs: list) -> list:
    """Coefficients of D * (sum c_j D^j) = sum (c_j' D^j + c_j D^(j+1))."""
    out = [derive(c) for c in coeffs] + [RatFunc()]
    for j, c in enumerate(coeffs):
        out[j + 1] = out[j + 1] + c
    return out


def ore_mul(a: OrePoly, b: OrePoly) -> OrePoly:
    """Product a*b in K[D]."""
    if a.is_zero() or b.is_zero():
        return ZERO
    if len(b.coeffs) == 1 and len(a.coeffs) == 1:
        return OrePoly._raw([a.coeffs[0] * b.coeffs[0]])
    out = [RatFunc()] * (len(a.coeffs) + len(b.coeffs) - 1)
    cur = list(b.coeffs)
    for i, ai in enumerate(a.coeffs):
        if i:
            cur = _d_times(cur)
        if ai.is_zero():
            continue
        for j, c in enumerate(cur):
            if not c.is_zero():
                out[j] = out[j] + ai * c
    return OrePoly._raw(out)


def apply_operator(a: OrePoly, f: RatFunc) -> RatFunc:
    out = RatFunc()
    for c in a.coeffs:
        if not c.is_zero():
            out = out + c * f
        f = derive(f)
    return out


@dataclass(frozen=True)
class DivisionResult:
    quotient: OrePoly
    remainder: OrePoly
    side: str


def divide(a: OrePoly, b: OrePoly, side: str = "left") -> DivisionResult:
    """Euclidean division: a = q*b + r (side='left') or a = b*q + r (side='right').

    Leading coefficients are divided commutatively; D^k c has leading term c D^k.
    """
    side = normalize_side(side)
    if b.is_zero():
        raise NonInvertibleError("division by the zero operator")
    m = b.order
    lcb_inv = b.lc().inverse()
    q = [RatFunc()] * max(a.order - m + 1, 0) if not a.is_zero() else []
    r = a
    if side == "left":
        shifts = [list(b.coeffs)]
        while r.order >= m:
            k = r.order - m
            c = r.lc() * lcb_inv
            q[k] = c
            while len(shifts) <= k:
                shifts.append(_d_times(shifts[-1]))
            sub = shifts[k]
            out = list(r.coeffs)
            for j, s in enumerate(sub):
                if not s.is_zero():
                    out[j] = out[j] - c * s
            out[-1] = RatFunc()  # cancels exactly
            r = OrePoly._raw(out)
    else:
        while r.order >= m:
            k = r.order - m
            c = r.lc() * lcb_inv
            q[k] = c
            bc = ore_mul(b, OrePoly._raw([c]))
            out = list(r.coeffs)
            for j, s in enumerate(bc.coeffs):
                if not s.is_zero():
                    out[j + k] = out[j + k] - s
            out[-1] = RatFunc()
            r = OrePoly._raw(out)
    return DivisionResult(OrePoly._raw(q), r, side)


def exact_quotient(a: OrePoly, b: OrePoly, side: str = "left") -> OrePoly:
    """q with a = q*b (side='left') or a = b*q (side='right'); raises if inexact."""
    res = divide(a, b, side)
    if not res.remainder.is_zero():
        raise NonInvertibleError(f"{b} does not divide {a} exactly on the {side}")
    return res.quotient


@dataclass(frozen=True)
class BezoutCertificate:
    d: OrePoly
    u: OrePoly
    v: OrePoly
    side: str
    a1: OrePoly
    b1: OrePoly


@dataclass(frozen=True)
class LcmCertificate:
    m: OrePoly
    a1: OrePoly
    b1: OrePoly
    side: str


def primitive_normalizer(*ops: OrePoly) -> RatFunc:
    """f in K such that f*op has jointly coprime polynomial coefficients.

    The scalar is fixed further so that the leading coefficient of the first
    nonzero operator becomes a monic polynomial.
    """
    den = _ONE_POLY
    for o in ops:
        for c in o.coeffs:
            if not c.den.is_one():
                den = den * (c.den // den.gcd(c.den))
    cont = None
    for o in ops:
        for c in o.coeffs:
            if c.is_zero():
                continue
            p = c.num * (den // c.den)
            cont = p if cont is None else cont.gcd(p)
            if cont.is_one():
                break
    if cont is None:
        return RatFunc(1)
    f = RatFunc(den, cont)
    lead = next(o for o in ops if not o.is_zero())
    return f / RatFunc((f * lead.lc()).num.leading_coefficient())


def _euclid(a: OrePoly, b: OrePoly):
    """Left-remainder Euclid with cofactor rows r_i = s_i a + t_i b.

    Each row is rescaled on the left by a unit of K so that its cofactors
    stay primitive with polynomial coefficients; that keeps coefficient
    growth in check.  Returns (r, s, t) for the last nonzero remainder and
    (s', t') of the first vanishing row (s' a + t' b = 0).
    """
    r0, r1 = a, b
    s0, s1, t0, t1 = ONE, ZERO, ZERO, ONE
    while not r1.is_zero():
        res = divide(r0, r1, "left")
        q = res.quotient
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
        r0, r1 = r1, res.remainder
        f = primitive_normalizer(s1, t1)
        if not f.is_one():
            s1, t1, r1 = s1.scale_left(f), t1.scale_left(f), r1.scale_left(f)
    return r0, s0, t0, s1, t1


def _sign_flip(*ops: OrePoly) -> tuple:
    return tuple(-o for o in ops)


def gcd_extended(a: OrePoly, b: OrePoly, side: str = "right") -> BezoutCertificate:
    """Monic gcd with Bezout cofactors and the cofactors a1, b1 of a, b."""
    side = normalize_side(side)
    if a.is_zero() and b.is_zero():
        raise DegenerateInputError("gcd of two zero operators is undefined")
    if side == "left":
        # aR + bR = dR  <=>  R a* + R b* = R d*
        c = gcd_extended(adjoint(a), adjoint(b), "right")
        d, u, v, a1, b1 = (adjoint(o) for o in (c.d, c.u, c.v, c.a1, c.b1))
        if not d.lc().is_one():
            d, u, v, a1, b1 = _sign_flip(d, u, v, a1, b1)
        return BezoutCertificate(d, u, v, "left", a1, b1)
    r, s, t, _, _ = _euclid(a, b)
    c = r.lc().inverse()
    d, u, v = r.scale_left(c), s.scale_left(c), t.scale_left(c)
    a1 = exact_quotient(a, d, "left")
    b1 = exact_quotient(b, d, "left")
    return BezoutCertificate(d, u, v, "right", a1, b1)


def lcm(a: OrePoly, b: OrePoly, side: str = "right") -> LcmCertificate:
    """lcm with cofactors, taken from the vanishing row of Euclid.

    The result is defined up to a unit of K; it is normalized so that the
    cofactors have jointly coprime polynomial coefficients (monic generators
    tend to carry enormous denominators).
    """
    side = normalize_side(side)
    if a.is_zero() or b.is_zero():
        raise DegenerateInputError("lcm requires nonzero operators")
    if side == "right":
        # aR ∩ bR = mR  <=>  R a* ∩ R b* = R m*
        c = lcm(adjoint(a), adjoint(b), "left")
        m, a1, b1 = adjoint(c.m), adjoint(c.a1), adjoint(c.b1)
        if not (a * b1 == m and b * a1 == m):
            raise InternalInconsistency("right lcm certificate failed self-check")
        return LcmCertificate(m, a1, b1, "right")
    g, _, _, s1, t1 = _euclid(a, b)
    f = primitive_normalizer(s1, t1)
    b1, a1 = s1.scale_left(f), -(t1.scale_left(f))
    m = b1 * a
    if a1 * b != m or m.order != a.order + b.order - g.order:
        raise InternalInconsistency("left lcm certificate failed self-check")
    return LcmCertificate(m, a1, b1, "left")


def ore_witness(a: OrePoly, b: OrePoly) -> tuple[OrePoly, OrePoly]:
    """(a1, b1) with b*a1 = a*b1 and b1 != 0."""
    if b.is_zero():
        raise DegenerateInputError("Ore witness needs a regular (nonzero) b")
    if a.is_zero():
        return ZERO, ONE
    if a == b:
        return ONE, ONE
    cert = lcm(a, b, "right")
    return cert.a1, cert.b1


def adjoint(a: OrePoly) -> OrePoly:
    """Formal adjoint: (sum f_i D^i)* = sum (-D)^i f_i."""
    n = len(a.coeffs)
    out = [RatFunc()] * n
    for i, f in enumerate(a.coeffs):
        if f.is_zero():
            continue
        sign = -1 if i % 2 else 1
        deriv = f
        # D^i f = sum_k C(i,k) f^(k) D^(i-k)
        for k in range(i + 1):
            if k:
                deriv = derive(deriv)
                if deriv.is_zero():
                    break
            out[i - k] = out[i - k] + deriv * (sign * comb(i, k))
    return OrePoly._raw(out)
