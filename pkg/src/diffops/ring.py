"""One interface over the two concrete rings K[D] and Mat_l(K[D]).

Fractions and module witnesses are written once against these helpers.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import orematrix as om
from . import orepoly as op
from .errors import InternalInconsistency, PreconditionError
from .orematrix import OreMatrix
from .orepoly import OrePoly, normalize_side


@dataclass(frozen=True)
class Gcd:
    """right: d = u a + v b, a = a1 d, b = b1 d; left: d = a u + b v, a = d a1, b = d b1."""

    d: object
    u: object
    v: object
    a1: object
    b1: object
    side: str


def same_kind(*elems) -> None:
    kinds = {type(e) for e in elems}
    if len(kinds) != 1:
        raise PreconditionError("cannot mix scalar operators and operator matrices")
    if isinstance(elems[0], OreMatrix):
        shapes = {e.shape for e in elems}
        if len(shapes) != 1:
            raise PreconditionError(f"matrix shapes differ: {sorted(shapes)}")


def degree(e):
    """Order for scalars, Dieudonne degree for matrices; None if singular."""
    if isinstance(e, OreMatrix):
        return om.ddet_degree(e)
    return None if e.is_zero() else e.order


def is_unit(e) -> bool:
    return degree(e) == 0


def adjoint(e):
    return e.adjoint()


def gcd(a, b, side: str = "right") -> Gcd:
    side = normalize_side(side)
    same_kind(a, b)
    if isinstance(a, OreMatrix):
        g = om.matrix_gcd(a, b, side)
        return Gcd(g.D, g.X, g.Y, g.A1, g.B1, side)
    c = op.gcd_extended(a, b, side)
    return Gcd(c.d, c.u, c.v, c.a1, c.b1, side)


def lcm(a, b, side: str = "right"):
    """(m, a1, b1): right m = a b1 = b a1; left m = b1 a = a1 b."""
    same_kind(a, b)
    if isinstance(a, OreMatrix):
        c = om.matrix_lcm(a, b, side)
        return c.M, c.A1, c.B1
    c = op.lcm(a, b, side)
    return c.m, c.a1, c.b1


def exact_quotient(x, d, side: str = "left"):
    """q with x = q d (side='left') or x = d q (side='right')."""
    if isinstance(d, OreMatrix):
        return om.matrix_exact_quotient(x, d, side)
    side = normalize_side(side)
    if side == "right":
        return op.adjoint(op.exact_quotient(op.adjoint(x), op.adjoint(d), "left"))
    return op.exact_quotient(x, d, "left")


def ore_right(a, b):
    """(a1, b1) with b a1 = a b1 and b1 regular; b must be regular."""
    same_kind(a, b)
    if not b.is_regular():
        raise PreconditionError("Ore witness needs a regular b")
    if isinstance(b, OreMatrix):
        # a1^† b^† = b1^† a^†
        X, Y = om.left_syzygy(b.adjoint(), a.adjoint())
        a1, b1 = X.adjoint(), (-Y).adjoint()
    else:
        a1, b1 = op.ore_witness(a, b)
    if b * a1 != a * b1 or not b1.is_regular():
        raise InternalInconsistency("Ore witness failed verification")
    return a1, b1


def ore_left(a, b):
    """(a1, b1) with a1 b = b1 a and b1 regular; b must be regular."""
    same_kind(a, b)
    if not b.is_regular():
        raise PreconditionError("Ore witness needs a regular b")
    if isinstance(b, OreMatrix):
        X, Y = om.left_syzygy(b, a)
        a1, b1 = X, -Y
    elif a.is_zero():
        a1, b1 = op.ZERO, op.ONE
    else:
        _, a1, b1 = lcm(a, b, "left")
    if a1 * b != b1 * a or not b1.is_regular():
        raise InternalInconsistency("Ore witness failed verification")
    return a1, b1


def hermite_normalizer(b, side: str):
    """Unit w so the denominator is canonical: b*w (right) or w*b (left).

    Scalars: w makes b monic.  Matrices: w brings b to Hermite form with monic
    pivots (row form for left, adjoint-column form for right).
    """
    side = normalize_side(side)
    if isinstance(b, OreMatrix):
        if side == "left":
            return om.row_hermite(b).U
        return om.row_hermite(b.adjoint()).U.adjoint()
    return OrePoly.coerce(b.lc().inverse())
