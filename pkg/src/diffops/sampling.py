"""Seeded random generators for ring elements, fractions and module elements."""
from __future__ import annotations

import random

from .orematrix import OreMatrix
from .orepoly import OrePoly
from .ratfunc import RatFunc, poly


def random_poly(rng: random.Random, deg: int, bound: int = 5, nonzero: bool = False):
    while True:
        d = rng.randint(0, deg)
        p = poly([rng.randint(-bound, bound) for _ in range(d + 1)])
        if not nonzero or not p.is_zero():
            return p


def random_ratfunc(rng: random.Random, num_deg: int = 2, den_deg: int = 2, bound: int = 5) -> RatFunc:
    num = random_poly(rng, num_deg, bound)
    den = random_poly(rng, den_deg, bound, nonzero=True)
    return RatFunc(num, den)


def random_nonzero_ratfunc(rng: random.Random, num_deg: int = 2, den_deg: int = 2, bound: int = 5) -> RatFunc:
    return RatFunc(random_poly(rng, num_deg, bound, nonzero=True),
                   random_poly(rng, den_deg, bound, nonzero=True))


def random_operator(rng: random.Random, max_order: int = 4, deg: int = 2, bound: int = 5,
                    *, nonzero: bool = True, exact_order: int | None = None) -> OrePoly:
    """Random element of K[D]; coefficients have numerator/denominator degree <= deg."""
    n = rng.randint(0, max_order) if exact_order is None else exact_order
    coeffs = [random_ratfunc(rng, deg, deg, bound) for _ in range(n)]
    lead = random_nonzero_ratfunc(rng, deg, deg, bound) if nonzero else random_ratfunc(rng, deg, deg, bound)
    return OrePoly(coeffs + [lead])


def random_polynomial_operator(rng: random.Random, max_order: int = 2, deg: int = 1, bound: int = 3) -> OrePoly:
    """Operator with polynomial coefficients (keeps matrix computations small)."""
    n = rng.randint(0, max_order)
    return OrePoly([RatFunc(random_poly(rng, deg, bound)) for _ in range(n + 1)])


def random_matrix(rng: random.Random, size: int = 2, max_order: int = 2, deg: int = 1, bound: int = 3) -> OreMatrix:
    return OreMatrix([[random_polynomial_operator(rng, max_order, deg, bound) for _ in range(size)]
                      for _ in range(size)])


def random_regular_matrix(rng: random.Random, size: int = 2, max_order: int = 2, deg: int = 1,
                          bound: int = 3) -> OreMatrix:
    while True:
        M = random_matrix(rng, size, max_order, deg, bound)
        if M.is_regular():
            return M


def random_unit_matrix(rng: random.Random, size: int = 2, steps: int = 3) -> OreMatrix:
    """Product of elementary matrices with order <= 1 off-diagonal entries."""
    U = OreMatrix.identity(size)
    for _ in range(steps):
        i, j = rng.sample(range(size), 2)
        E = [[OrePoly.coerce(int(r == c)) for c in range(size)] for r in range(size)]
        E[i][j] = OrePoly((rng.randint(-2, 2), rng.randint(-1, 1)))
        U = OreMatrix(E) * U
    return U


def random_element(rng: random.Random, kind, **kw):
    """Scalar operator if kind is None, else a size-`kind` matrix."""
    if kind is None:
        return random_operator(rng, **kw)
    return random_matrix(rng, kind, **kw)
