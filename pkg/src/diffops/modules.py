"""Concrete left modules over K[D] / Mat_l(K[D]) and the constructive witnesses.

Two module families are provided:

* :class:`NaturalModule` -- K^l with operators acting by differentiation;
* :class:`CyclicModule` -- R/Rc, elements are remainders of left division by c.

The witness functions verify their own postconditions before returning.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count

from flint import fmpq, fmpq_mat

from . import ring
from .errors import DiffopsError, InternalInconsistency, PreconditionError
from .orematrix import OreMatrix, regularize, regularize_pair
from .orepoly import ZERO, OrePoly, divide
from .ratfunc import Poly, RatFunc, hermite_reduce, poly


def _entry(c) -> RatFunc:
    if isinstance(c, OrePoly):
        if c.order > 0:
            raise PreconditionError("operator given where a rational function is expected")
        return c.coeff(0)
    try:
        return RatFunc.coerce(c)
    except TypeError as exc:
        raise PreconditionError(str(exc)) from exc


class NaturalModule:
    """K^dim with the natural action; dim = 1 for the scalar ring."""

    def __init__(self, dim: int = 1):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.dim = dim

    def coerce(self, x) -> tuple:
        if isinstance(x, (tuple, list)):
            if len(x) != self.dim:
                raise PreconditionError(f"expected {self.dim} components, got {len(x)}")
            return tuple(_entry(c) for c in x)
        if self.dim != 1:
            raise PreconditionError("scalar element given for a vector module")
        return (_entry(x),)

    def act(self, r, x) -> tuple:
        x = self.coerce(x)
        if isinstance(r, OreMatrix):
            if r.shape != (self.dim, self.dim):
                raise PreconditionError("operator matrix does not match module dimension")
            return r(x)
        if self.dim != 1:
            raise PreconditionError("scalar operators act on the one-dimensional module only")
        return (OrePoly.coerce(r)(x[0]),)

    def add(self, x, y) -> tuple:
        return tuple(a + b for a, b in zip(self.coerce(x), self.coerce(y)))

    def sub(self, x, y) -> tuple:
        return tuple(a - b for a, b in zip(self.coerce(x), self.coerce(y)))

    def zero(self) -> tuple:
        return (RatFunc(),) * self.dim

    def is_zero(self, x) -> bool:
        return all(c.is_zero() for c in self.coerce(x))

    def equal(self, x, y) -> bool:
        return self.coerce(x) == self.coerce(y)

    def random_element(self, rng: random.Random, deg: int = 2) -> tuple:
        from .sampling import random_ratfunc

        return tuple(random_ratfunc(rng, deg, deg) for _ in range(self.dim))

    def format(self, x) -> list[str]:
        return [str(c) for c in self.coerce(x)]

    def __repr__(self):
        return f"NaturalModule({self.dim})"


class CyclicModule:
    """R/Rc for a nonzero scalar operator c."""

    def __init__(self, c: OrePoly):
        c = OrePoly.coerce(c)
        if c.is_zero():
            raise PreconditionError("cyclic module needs a nonzero modulus")
        self.c = c
        self.dim = 1

    def reduce(self, r) -> OrePoly:
        return divide(OrePoly.coerce(r), self.c, "left").remainder

    def coerce(self, x) -> OrePoly:
        x = OrePoly.coerce(x)
        return x if x.order < self.c.order else self.reduce(x)

    def act(self, r, x) -> OrePoly:
        if isinstance(r, OreMatrix):
            raise PreconditionError("matrix operators do not act on a cyclic module")
        return self.reduce(OrePoly.coerce(r) * self.coerce(x))

    def add(self, x, y) -> OrePoly:
        return self.coerce(x) + self.coerce(y)

    def sub(self, x, y) -> OrePoly:
        return self.coerce(x) - self.coerce(y)

    def zero(self) -> OrePoly:
        return ZERO

    def is_zero(self, x) -> bool:
        return self.coerce(x).is_zero()

    def equal(self, x, y) -> bool:
        return self.coerce(x) == self.coerce(y)

    def basis(self) -> list[OrePoly]:
        return [OrePoly.monomial(1, k) for k in range(self.c.order)]

    def random_element(self, rng: random.Random, deg: int = 1) -> OrePoly:
        from .sampling import random_ratfunc

        return OrePoly([random_ratfunc(rng, deg, deg) for _ in range(self.c.order)])

    def format(self, x) -> str:
        return str(self.coerce(x))

    def __repr__(self):
        return f"CyclicModule({self.c})"


def act(r, x, V):
    return V.act(r, x)


@dataclass(frozen=True)
class WitnessTrace:
    """Audit data of the construction z = u x + v y.

    ``a`` is the (possibly regularized) first operand: a = a_in + b*shift.
    ``a1_original`` is the cofactor for the input operand: a_in b1 = b a1_original.
    """

    a: object
    b: object
    a1: object
    b1: object
    m: object
    u: object
    v: object
    p: object
    q: object
    u_regular: bool
    v_regular: bool
    shift: object
    a1_original: object

    def identities(self) -> dict[str, bool]:
        a, b, a1, b1, m, u, v, p, q = (self.a, self.b, self.a1, self.b1, self.m,
                                       self.u, self.v, self.p, self.q)
        one = b.one_like()
        return {
            "m = a*b1": a * b1 == m,
            "m = b*a1": b * a1 == m,
            "u*b1 + v*a1 = 1": u * b1 + v * a1 == one,
            "1 - a1*v = p*b": one - a1 * v == p * b,
            "a1*u = p*a": a1 * u == p * a,
            "1 - b1*u = q*a": one - b1 * u == q * a,
            "b1*v = q*b": b1 * v == q * b,
        }


def _check_witness_pre(a, b):
    ring.same_kind(a, b)
    if not b.is_regular():
        raise PreconditionError("b must be regular")
    if not ring.is_unit(ring.gcd(a, b, "left").d):
        raise PreconditionError("a and b are not left coprime")


def _lcm_data(a, b, seed: int):
    """Regularize a if needed, then the right lcm m = a b1 = b a1 of (a, b)."""
    shift = b.zero_like()
    a_eff = a
    if not a.is_regular():
        shift = regularize(a, b, "right", seed=seed)
        a_eff = a + b * shift
    m, a1, b1 = ring.lcm(a_eff, b, "right")
    return a_eff, shift, m, a1, b1, a1 - shift * b1


def _regular_bezout(a, b, a1, b1, seed: int):
    """u b1 + v a1 = 1 with u, v regular (shifts u + t a, v - t b)."""
    g = ring.gcd(b1, a1, "right")
    if not ring.is_unit(g.d):
        raise InternalInconsistency("lcm cofactors are not right coprime")
    dinv = ring.exact_quotient(g.d.one_like(), g.d, "left")
    u, v = dinv * g.u, dinv * g.v
    if isinstance(a, OreMatrix):
        t = regularize_pair(u, a, v, -b, "left", seed=seed)
        return u + t * a, v - t * b
    for k in count():
        lam = (k + 1) // 2 * (1 if k % 2 else -1)
        uu, vv = u + OrePoly.coerce(lam) * a, v - OrePoly.coerce(lam) * b
        if not uu.is_zero() and not vv.is_zero():
            return uu, vv
        if k > 8:
            raise InternalInconsistency("no nonzero cofactor shift in a domain")


def intersection_witness(a, b, x, y, V, *, seed: int = 0):
    """z with b1 z = x and a1 z = y, given a x = b y and (a, b) left coprime.

    Returns (z, trace).  Steps: regularize a if needed, take the right lcm,
    make the Bezout cofactors regular, and set z = u x + v y.
    """
    _check_witness_pre(a, b)
    x, y = V.coerce(x), V.coerce(y)
    if not V.equal(V.act(a, x), V.act(b, y)):
        raise PreconditionError("a x != b y")
    a_eff, shift, m, a1, b1, a1_orig = _lcm_data(a, b, seed)
    y_eff = V.add(y, V.act(shift, x))
    u, v = _regular_bezout(a_eff, b, a1, b1, seed)
    one = b.one_like()
    try:
        p = ring.exact_quotient(one - a1 * v, b, "left")
        q = ring.exact_quotient(one - b1 * u, a_eff, "left")
    except DiffopsError as exc:
        raise InternalInconsistency(f"auxiliary cofactors do not exist: {exc}") from exc
    trace = WitnessTrace(a_eff, b, a1, b1, m, u, v, p, q,
                         u.is_regular(), v.is_regular(), shift, a1_orig)
    bad = [k for k, ok in trace.identities().items() if not ok]
    if bad:
        raise InternalInconsistency(f"witness identities failed: {bad}")
    z = V.add(V.act(u, x), V.act(v, y_eff))
    if not (V.equal(V.act(b1, z), x) and V.equal(V.act(a1_orig, z), y)):
        raise InternalInconsistency("witness z does not reproduce (x, y)")
    return z, trace


def intersection_check(a, b, V, trials: int = 20, seed: int = 0) -> dict:
    """Check mV ⊆ aV ∩ bV on samples and the reverse inclusion by witnesses."""
    _check_witness_pre(a, b)
    _, _, _, _, b1, a1 = _lcm_data(a, b, seed)
    m = a * b1
    passes, failures = 0, []
    for t in range(trials):
        tseed = seed * 1_000_003 + t
        rng = random.Random(tseed)
        z0 = V.random_element(rng)
        x, y = V.act(b1, z0), V.act(a1, z0)
        try:
            mz = V.act(m, z0)
            ok = V.equal(V.act(a, x), mz) and V.equal(V.act(b, y), mz)
            if ok:
                z, _ = intersection_witness(a, b, x, y, V, seed=tseed)
                ok = V.equal(V.act(b1, z), x) and V.equal(V.act(a1, z), y)
        except DiffopsError:
            ok = False
        if ok:
            passes += 1
        else:
            failures.append({"seed": tseed, "inputs": {"z0": V.format(z0)}})
    return {"trials": trials, "passes": passes, "failures": failures}


def _eps_times(e, eps):
    return e * OrePoly.coerce(Fraction(eps))


def adjoint_relation_witness(a, b, x, y, eps, V, *, seed: int = 0):
    """z with b z = x and a z = y, given a* x = eps b* y and a* b = eps b* a."""
    ring.same_kind(a, b)
    eps = Fraction(eps)
    if eps == 0:
        raise PreconditionError("eps must be invertible")
    if not b.is_regular():
        raise PreconditionError("b must be regular")
    if not ring.is_unit(ring.gcd(a, b, "right").d):
        raise PreconditionError("a and b are not right coprime")
    sa, sb = a.adjoint(), b.adjoint()
    if sa * b != _eps_times(sb * a, eps):
        raise PreconditionError("adjoint(a) b != eps adjoint(b) a")
    x, y = V.coerce(x), V.coerce(y)
    A, B = sa, _eps_times(sb, eps)
    if not V.equal(V.act(A, x), V.act(B, y)):
        raise PreconditionError("adjoint(a) x != eps adjoint(b) y")
    z1, trace = intersection_witness(A, B, x, y, V, seed=seed)
    # the lcm cofactors equal (b, a) up to a common right unit w
    w = ring.exact_quotient(trace.b1, b, "right")
    z = V.act(w, z1)
    if not (V.equal(V.act(b, z), x) and V.equal(V.act(a, z), y)):
        raise InternalInconsistency("adjoint relation witness does not reproduce (x, y)")
    return z


def skew_pair_check(a, b) -> bool:
    """a* b + b* a == 0 in the ring."""
    ring.same_kind(a, b)
    return (a.adjoint() * b + b.adjoint() * a).is_zero()


def skew_pair_acts_zero(a, b, V: CyclicModule) -> bool:
    """a* b + b* a annihilates every basis element of the cyclic module V."""
    s = a.adjoint() * b + b.adjoint() * a
    return all(V.is_zero(V.act(s, e)) for e in V.basis())


def maximal_isotropy_witness(a, b, y1, y2, V, *, seed: int = 0):
    """z with b z = y1 and a z = y2 for y1 ⊕ y2 orthogonal to L_{a,b}."""
    if not skew_pair_check(a, b):
        raise PreconditionError("a* b + b* a is not zero")
    residue = V.add(V.act(a.adjoint(), y1), V.act(b.adjoint(), y2))
    if not V.is_zero(residue):
        raise PreconditionError("y1 ⊕ y2 is not orthogonal to L_{a,b}")
    return adjoint_relation_witness(a, b, y1, y2, -1, V, seed=seed)


# -- the pairing with values in K/DK ----------------------------------------

@dataclass(frozen=True)
class KModClass:
    """Class in K/DK, represented by its Hermite residue part."""

    representative: RatFunc = field(default_factory=RatFunc)

    @classmethod
    def of(cls, g: RatFunc) -> "KModClass":
        return cls(hermite_reduce(RatFunc.coerce(g)).residue_part)

    def is_zero(self) -> bool:
        return self.representative.is_zero()

    def __add__(self, other: "KModClass") -> "KModClass":
        return KModClass.of(self.representative + other.representative)

    def __neg__(self):
        return KModClass(-self.representative)


def pairing_class(x, y) -> KModClass:
    """Class of sum x_i y_i in K/DK."""
    xs = x if isinstance(x, (tuple, list)) else (x,)
    ys = y if isinstance(y, (tuple, list)) else (y,)
    if len(xs) != len(ys):
        raise PreconditionError("pairing needs vectors of equal dimension")
    total = RatFunc()
    for p, q in zip(xs, ys):
        total = total + RatFunc.coerce(p) * RatFunc.coerce(q)
    return KModClass.of(total)


# -- polynomial kernels ------------------------------------------------------

def _nullspace(rows: list[list[fmpq]], ncols: int) -> list[list[fmpq]]:
    if not rows:
        return [[fmpq(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    R, rank = fmpq_mat(rows).rref()
    pivots = []
    for i in range(rank):
        for j in range(ncols):
            if R[i, j] != 0:
                pivots.append(j)
                break
    basis = []
    for free in (j for j in range(ncols) if j not in pivots):
        vec = [fmpq(0)] * ncols
        vec[free] = fmpq(1)
        for i, pj in enumerate(pivots):
            vec[pj] = -R[i, free]
        basis.append(vec)
    return basis


def canonical_span(polys) -> list[Poly]:
    """Reduced echelon basis of a Q-span of polynomials, by increasing degree."""
    polys = [RatFunc.coerce(p) for p in polys]
    if any(not p.is_polynomial() for p in polys):
        raise PreconditionError("span elements must be polynomials")
    polys = [p.num for p in polys if not p.is_zero()]
    if not polys:
        return []
    n = max(p.degree() for p in polys) + 1
    # columns ordered by decreasing degree so pivots are leading terms
    rows = [[p.coeffs()[n - 1 - j] if n - 1 - j <= p.degree() else fmpq(0) for j in range(n)]
            for p in polys]
    R, rank = fmpq_mat(rows).rref()
    out = [poly([R[i, n - 1 - k] for k in range(n)]) for i in range(rank)]
    return sorted(out, key=lambda p: p.degree())


def span_equal(p, q) -> bool:
    return [list(x.coeffs()) for x in canonical_span(p)] == [list(x.coeffs()) for x in canonical_span(q)]


def span_intersection(p, q) -> list[Poly]:
    p, q = canonical_span(p), canonical_span(q)
    if not p or not q:
        return []
    n = max(x.degree() for x in p + q) + 1
    cols = p + [-x for x in q]
    mat = [[c.coeffs()[k] if k <= c.degree() else fmpq(0) for c in cols] for k in range(n)]
    out = []
    for vec in _nullspace(mat, len(cols)):
        acc = poly([])
        for coef, base in zip(vec[:len(p)], p):
            acc = acc + base * coef
        out.append(acc)
    return canonical_span(out)


def kernel_polynomial(b: OrePoly, N: int) -> list[Poly]:
    """Basis of {p in Q[x]: deg p <= N, b(p) = 0}, in canonical echelon form."""
    b = OrePoly.coerce(b)
    if b.is_zero():
        raise PreconditionError("kernel of the zero operator is everything")
    if N < 0:
        raise PreconditionError("degree bound must be nonnegative")
    den = poly([1])
    for c in b.coeffs:
        den = den * (c.den // den.gcd(c.den))
    cleared = [c.num * (den // c.den) for c in b.coeffs]
    images = []
    for k in range(N + 1):
        acc = poly([])
        mono = poly([0] * k + [1])
        for c in cleared:
            if not c.is_zero():
                acc = acc + c * mono
            mono = mono.derivative()
        images.append(acc)
    height = max((im.degree() for im in images), default=-1) + 1
    rows = [[im.coeffs()[r] if r <= im.degree() else fmpq(0) for im in images] for r in range(height)]
    basis = [poly(vec) for vec in _nullspace(rows, N + 1)]
    return canonical_span(basis)


def apply_to_span(a: OrePoly, polys) -> list[RatFunc]:
    return [OrePoly.coerce(a)(RatFunc.coerce(p)) for p in polys]
