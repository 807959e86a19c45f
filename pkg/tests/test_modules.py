import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diffops import ring
from diffops.errors import PreconditionError
from diffops.modules import (
    CyclicModule, KModClass, NaturalModule, canonical_span, adjoint_relation_witness, intersection_check,
    kernel_polynomial, maximal_isotropy_witness, pairing_class, skew_pair_acts_zero, skew_pair_check,
    span_equal, span_intersection, intersection_witness,
)
from diffops.orematrix import OreMatrix
from diffops.orepoly import ONE, ZERO, OrePoly
from diffops.parsing import parse_matrix
from diffops.ratfunc import X, derive, is_total_derivative, poly
from diffops.sampling import random_nonzero_ratfunc, random_operator, random_ratfunc, random_regular_matrix
from diffops.selftest import check_kernels
from helpers import operators, ratfuncs, seeds

D = OrePoly.D()
V1 = NaturalModule(1)


def _left_coprime(rng, max_order=2):
    while True:
        a, b = random_operator(rng, max_order), random_operator(rng, max_order)
        if ring.is_unit(ring.gcd(a, b, "left").d):
            return a, b


def test_action_examples():
    assert V1.act(ONE, X) == (X,)
    assert CyclicModule(D * D).act(D, D) == ZERO
    assert V1.act(D, X * X) == (2 * X,)


def test_kind_mismatch():
    with pytest.raises(PreconditionError):
        V1.act(OreMatrix.identity(2), X)
    with pytest.raises(PreconditionError):
        CyclicModule(D).act(OreMatrix.identity(1), ONE)
    with pytest.raises(PreconditionError):
        NaturalModule(2).act(D, (X, X))


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_module_axioms(seed):
    rng = random.Random(seed)
    r, s = random_operator(rng, 2), random_operator(rng, 2)
    for V in (V1, CyclicModule(random_operator(rng, 3))):
        x = V.random_element(rng)
        assert V.equal(V.act(r * s, x), V.act(r, V.act(s, x)))
        assert V.equal(V.act(r + s, x), V.add(V.act(r, x), V.act(s, x)))


def test_matrix_module_axioms():
    rng = random.Random(3)
    V = NaturalModule(2)
    A, B = random_regular_matrix(rng, 2), random_regular_matrix(rng, 2)
    x = V.random_element(rng)
    assert V.equal(V.act(A * B, x), V.act(A, V.act(B, x)))


def test_cyclic_elements_are_remainders():
    V = CyclicModule(D * D + X)
    assert V.coerce(D ** 3) == V.reduce(D ** 3)
    assert V.coerce(D ** 3).order < 2


def test_witness_unit_case():
    z, trace = intersection_witness(ONE, ONE, X, X, V1)
    assert z == (X,)
    assert all(trace.identities().values())


def test_witness_with_unit_a():
    # x * xh = D yh, instance built from a random yh
    rng = random.Random(7)
    yh = random_ratfunc(rng)
    xh = derive(yh) / X
    z, trace = intersection_witness(OrePoly.coerce(X), D, xh, yh, V1)
    assert V1.act(trace.b1, z) == (xh,) and V1.act(trace.a1, z) == (yh,)


@given(seeds, st.booleans())
@settings(max_examples=30, deadline=None)
def test_witness_roundtrip(seed, cyclic):
    rng = random.Random(seed)
    a, b = _left_coprime(rng)
    V = CyclicModule(random_operator(rng, 3)) if cyclic else V1
    m, a1, b1 = ring.lcm(a, b, "right")
    z0 = V.random_element(rng)
    x, y = V.act(b1, z0), V.act(a1, z0)
    z, trace = intersection_witness(a, b, x, y, V, seed=seed)
    assert V.equal(V.act(b1, z), x) and V.equal(V.act(a1, z), y)
    assert all(trace.identities().values())
    assert trace.u_regular and trace.v_regular


def test_witness_regularizes_singular_a():
    V = NaturalModule(2)
    a = parse_matrix([["D", "0"], ["0", "0"]])
    b = OreMatrix.identity(2)
    z0 = (X, X * X)
    x, y = V.act(b, z0), V.act(a, z0)
    z, trace = intersection_witness(a, b, x, y, V)
    assert not trace.shift.is_zero()
    assert V.equal(V.act(a, z), y) and V.equal(V.act(b, z), x)


def test_witness_preconditions():
    with pytest.raises(PreconditionError):
        intersection_witness(D, D, ONE, ONE, V1)
    with pytest.raises(PreconditionError):
        intersection_witness(D, ZERO, ONE, ONE, V1)
    with pytest.raises(PreconditionError):
        intersection_witness(D, D + X, ONE, ONE, V1)


def test_intersection_check():
    report = intersection_check(ONE, ONE, V1, trials=3)
    assert report == {"trials": 3, "passes": 3, "failures": []}
    rng = random.Random(11)
    a, b = _left_coprime(rng)
    report = intersection_check(a, b, CyclicModule(random_operator(rng, 3)), trials=10, seed=4)
    assert report["passes"] == 10
    with pytest.raises(PreconditionError):
        intersection_check(D, D, V1)


def test_adjoint_relation_examples():
    assert adjoint_relation_witness(D, ONE, X, ONE, -1, V1) == (X,)
    assert adjoint_relation_witness(ZERO, ONE, X * X, 0, -1, V1) == (X * X,)
    with pytest.raises(PreconditionError):
        adjoint_relation_witness(D, ONE, X, ONE, 1, V1)


@given(seeds)
@settings(max_examples=20, deadline=None)
def test_adjoint_relation_roundtrip(seed):
    rng = random.Random(seed)
    g = OrePoly.coerce(random_nonzero_ratfunc(rng, 1, 1))
    # a = D b with b a unit of K satisfies a* b = -b* a
    a, b = D * g, g
    z0 = V1.random_element(rng)
    z = adjoint_relation_witness(a, b, V1.act(b, z0), V1.act(a, z0), -1, V1)
    assert V1.act(b, z) == V1.act(b, z0) and V1.act(a, z) == V1.act(a, z0)


def test_skew_pair_examples():
    assert skew_pair_check(D, ONE)
    assert not skew_pair_check(ONE, ONE)


@given(operators(3))
@settings(max_examples=40, deadline=None)
def test_family_d_times_b_is_skew(b):
    assert skew_pair_check(D * b, b)
    assert skew_pair_acts_zero(D * b, b, CyclicModule(D ** 3 + X))


@given(operators(2), ratfuncs(), ratfuncs())
@settings(max_examples=40, deadline=None)
def test_isotropy_classes_vanish(b, x, x2):
    a = D * b
    cls = pairing_class(b(x), a(x2)) + pairing_class(a(x), b(x2))
    assert cls.is_zero()


def test_maximal_isotropy_examples():
    assert maximal_isotropy_witness(D, ONE, X, ONE, V1) == (X,)
    assert maximal_isotropy_witness(D, ONE, 0, 0, V1) == (0,)
    with pytest.raises(PreconditionError):
        maximal_isotropy_witness(D * D, D, 0, 0, V1)
    with pytest.raises(PreconditionError):
        maximal_isotropy_witness(D, ONE, X, X, V1)


def test_maximal_isotropy_with_nonunit_b():
    g = OrePoly.coerce(X + 1)
    b = g.adjoint() * D * g
    w = D
    a = ONE + w * b
    assert skew_pair_check(a, b)
    z0 = (1 / (X - 2),)
    z = maximal_isotropy_witness(a, b, V1.act(b, z0), V1.act(a, z0), V1)
    assert V1.act(b, z) == V1.act(b, z0) and V1.act(a, z) == V1.act(a, z0)


def test_pairing_examples():
    assert not pairing_class(1 / X, 1).is_zero()
    assert pairing_class(1 / X, 1) == KModClass(1 / X)
    assert pairing_class(X + 1, 0).is_zero()
    h = 1 / (X * X + 1)
    assert pairing_class((derive(h), X), (1, 0)).is_zero()
    with pytest.raises(PreconditionError):
        pairing_class((X,), (X, X))


@given(ratfuncs(), ratfuncs(), ratfuncs())
@settings(max_examples=40, deadline=None)
def test_pairing_symmetric_and_biadditive(f, g, h):
    assert pairing_class(f, g) == pairing_class(g, f)
    assert pairing_class(f + g, h) == pairing_class(f, h) + pairing_class(g, h)


@given(operators(3), ratfuncs(), ratfuncs())
@settings(max_examples=60, deadline=None)
def test_integration_by_parts(a, f, g):
    assert is_total_derivative(a(f) * g - f * a.adjoint()(g))
    assert pairing_class(a(f), g) == pairing_class(f, a.adjoint()(g))


@pytest.mark.parametrize("b, basis", [
    (D * D, [poly([1]), poly([0, 1])]),
    (X * D - 1, [poly([0, 1])]),
    (D * D - (2 / X) * D + 2 / (X * X), [poly([0, 1]), poly([0, 0, 1])]),
    (X * X * D * D - 2 * X * D + 2, [poly([0, 1]), poly([0, 0, 1])]),
])
def test_kernel_examples(b, basis):
    assert kernel_polynomial(b, 5) == basis


def test_kernel_preconditions():
    with pytest.raises(PreconditionError):
        kernel_polynomial(ZERO, 3)
    with pytest.raises(PreconditionError):
        kernel_polynomial(D, -1)
    assert kernel_polynomial(D + 1, 4) == []


@given(operators(2, 1), st.integers(0, 6))
@settings(max_examples=30, deadline=None)
def test_kernel_elements_are_solutions(b, n):
    for p in kernel_polynomial(b, n):
        assert b(p).is_zero()


def test_span_helpers():
    assert canonical_span([X + 1, 2 * X + 2, X]) == [poly([1]), poly([0, 1])]
    assert span_equal([X, X * X + X], [X * X, X])
    assert span_intersection([ONE.coeffs[0], X], [X, X * X]) == [poly([0, 1])]


def test_crafted_kernel_suite():
    assert check_kernels() == []
