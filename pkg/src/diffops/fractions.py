"""Rational (matrix) pseudodifferential operators as one-sided fractions.

A right fraction (a, b) stands for a b^{-1}, a left fraction for b^{-1} a,
always with a regular denominator.  Values are compared through common
denominators; minimal forms are canonical up to the normalization described
in :func:`make_minimal`.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import ring
from .errors import InternalInconsistency, PreconditionError, ValueMismatchError
from .orematrix import OreMatrix
from .orepoly import OrePoly, normalize_side


@dataclass(frozen=True)
class OperatorFraction:
    num: OrePoly | OreMatrix
    den: OrePoly | OreMatrix
    side: str = "right"
    minimal: bool = False

    def __post_init__(self):
        num, den = self.num, self.den
        if isinstance(num, OreMatrix) or isinstance(den, OreMatrix):
            ring.same_kind(num, den)
        else:
            object.__setattr__(self, "num", OrePoly.coerce(num))
            object.__setattr__(self, "den", OrePoly.coerce(den))
        object.__setattr__(self, "side", normalize_side(self.side))
        if not self.den.is_regular():
            raise PreconditionError("fraction denominator must be regular")

    @classmethod
    def integral(cls, a, side: str = "right") -> "OperatorFraction":
        return cls(a, a.one_like() if isinstance(a, OreMatrix) else OrePoly.coerce(1), side)

    @property
    def is_matrix(self) -> bool:
        return isinstance(self.den, OreMatrix)

    def __str__(self):
        if self.side == "right":
            return f"({self.num}) * ({self.den})^-1"
        return f"({self.den})^-1 * ({self.num})"


def _check_compatible(f: OperatorFraction, g: OperatorFraction):
    ring.same_kind(f.den, g.den)


def make_minimal(f: OperatorFraction) -> OperatorFraction:
    """Strip the gcd on the fraction's side and normalize the denominator.

    Right fractions a b^{-1}: a = a1 d, b = b1 d with d the right gcd, then
    (a1, b1) is multiplied on the right by the unit making b1 monic (scalar)
    or in column Hermite form (matrix).  Left fractions mirror this.
    """
    a, b, side = f.num, f.den, f.side
    g = ring.gcd(a, b, side)
    a1, b1 = g.a1, g.b1
    w = ring.hermite_normalizer(b1, side)
    if side == "right":
        a1, b1 = a1 * w, b1 * w
    else:
        a1, b1 = w * a1, w * b1
    return OperatorFraction(a1, b1, side, minimal=True)


def is_coprime(a, b, side: str) -> bool:
    """Side-matching coprimality: right means Ra + Rb = R, left aR + bR = R."""
    return ring.is_unit(ring.gcd(a, b, side).d)


@dataclass(frozen=True)
class QRecovery:
    """a = a1 q, b = b1 q (right) or a = q a1, b = q b1 (left), q regular."""

    q: object
    u: object
    v: object
    side: str


def recover_common_factor(f_raw: OperatorFraction, f_min: OperatorFraction) -> QRecovery:
    """The regular element relating a fraction to a coprime decomposition of it.

    With Bezout u a1 + v b1 = 1, q = u a + v b (right fractions; mirrored on
    the left).  The identities are checked before returning.
    """
    if f_raw.side != f_min.side:
        raise PreconditionError("both fractions must be written on the same side")
    _check_compatible(f_raw, f_min)
    side = f_raw.side
    a, b, a1, b1 = f_raw.num, f_raw.den, f_min.num, f_min.den
    g = ring.gcd(a1, b1, side)
    if not ring.is_unit(g.d):
        raise PreconditionError("the reference decomposition is not coprime")
    if not fraction_equal(f_raw, f_min):
        raise ValueMismatchError("fractions do not represent the same element")
    # normalize the Bezout identity to u a1 + v b1 = 1 (resp. a1 u + b1 v = 1)
    dinv = ring.exact_quotient(g.d.one_like(), g.d, "left" if side == "right" else "right")
    if side == "right":
        u, v = dinv * g.u, dinv * g.v
        q = u * a + v * b
        ok = a1 * q == a and b1 * q == b
    else:
        u, v = g.u * dinv, g.v * dinv
        q = a * u + b * v
        ok = q * a1 == a and q * b1 == b
    if not ok or not q.is_regular():
        raise InternalInconsistency("recovered q fails a = a1 q, b = b1 q")
    return QRecovery(q, u, v, side)


def convert_side(f: OperatorFraction) -> OperatorFraction:
    """Rewrite a b^{-1} as b'^{-1} a' (or back) and minimize."""
    a, b = f.num, f.den
    if f.side == "right":
        # b'^{-1} a' = a b^{-1}  <=>  a' b = b' a
        a2, b2 = ring.ore_left(a, b)
        return make_minimal(OperatorFraction(a2, b2, "left"))
    # a' b'^{-1} = b^{-1} a  <=>  b a' = a b'
    a2, b2 = ring.ore_right(a, b)
    return make_minimal(OperatorFraction(a2, b2, "right"))


def _to_side(g: OperatorFraction, side: str) -> OperatorFraction:
    return g if g.side == side else convert_side(g)


def fraction_equal(f: OperatorFraction, g: OperatorFraction) -> bool:
    """Value equality via the lcm of the two denominators."""
    _check_compatible(f, g)
    g = _to_side(g, f.side)
    a, b, c, d = f.num, f.den, g.num, g.den
    if f.side == "right":
        _, d_d, d_b = ring.lcm(b, d, "right")  # m = b d_b = d d_d
        return a * d_b == c * d_d
    _, d_d, d_b = ring.lcm(b, d, "left")  # m = d_b b = d_d d
    return d_b * a == d_d * c


def fraction_arith(f: OperatorFraction, g: OperatorFraction, op: str) -> OperatorFraction:
    """Sum or product, returned minimal on f's side."""
    _check_compatible(f, g)
    g = _to_side(g, f.side)
    a, b, c, d = f.num, f.den, g.num, g.den
    side = f.side
    if op == "add":
        if side == "right":
            m, d_d, d_b = ring.lcm(b, d, "right")
            out = OperatorFraction(a * d_b + c * d_d, m, side)
        else:
            m, d_d, d_b = ring.lcm(b, d, "left")
            out = OperatorFraction(d_b * a + d_d * c, m, side)
    elif op == "mul":
        if side == "right":
            # b^{-1} c = c' b'^{-1} with b c' = c b'
            c1, b1 = ring.ore_right(c, b)
            out = OperatorFraction(a * c1, d * b1, side)
        else:
            # a d^{-1} = d'^{-1} a' with a' d = d' a
            a1, d1 = ring.ore_left(a, d)
            out = OperatorFraction(a1 * c, d1 * b, side)
    else:
        raise ValueError(f"unknown operation {op!r}")
    return make_minimal(out)


def degree_invariant(f: OperatorFraction) -> tuple[int, int]:
    """Denominator degrees of the minimal left and minimal right forms of f."""
    right = make_minimal(_to_side(f, "right"))
    left = make_minimal(_to_side(f, "left"))
    deg_left, deg_right = ring.degree(left.den), ring.degree(right.den)
    if deg_left is None or deg_right is None:
        raise InternalInconsistency("minimal decomposition has a singular denominator")
    return deg_left, deg_right
