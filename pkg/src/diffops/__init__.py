"""Exact arithmetic for differential operators over Q(x) and matrices of them.

Main entry points::

    from diffops import OrePoly, RatFunc, parse_operator, gcd_extended
    a = parse_operator("D^2 + x*D")
    g = gcd_extended(a, parse_operator("D"), "right")
"""
from .errors import (
    DegenerateInputError, DiffopsError, InternalInconsistency, MinimalityUnavailableError,
    NonInvertibleError, ParseError, PreconditionError, SearchFailure, ValueMismatchError,
)
from .fractions import (
    OperatorFraction, convert_side, degree_invariant, fraction_arith, fraction_equal, make_minimal,
    recover_common_factor,
)
from .modules import (
    CyclicModule, KModClass, NaturalModule, WitnessTrace, adjoint_relation_witness, intersection_check,
    kernel_polynomial, maximal_isotropy_witness, pairing_class, skew_pair_check, intersection_witness,
)
from .orematrix import (
    OreMatrix, ddet_degree, is_regular, mat_arith, matrix_gcd, matrix_lcm, regularize,
    regularize_pair, row_hermite,
)
from .orepoly import OrePoly, adjoint, divide, gcd_extended, lcm, ore_mul, ore_witness
from .parsing import parse_matrix, parse_operator
from .ratfunc import RatFunc, derive, hermite_reduce, is_total_derivative, ratfunc_arith

__all__ = [
    "DegenerateInputError", "DiffopsError", "InternalInconsistency",
    "MinimalityUnavailableError", "NonInvertibleError", "ParseError", "PreconditionError",
    "SearchFailure", "ValueMismatchError", "OperatorFraction", "convert_side",
    "degree_invariant", "fraction_arith", "fraction_equal", "make_minimal", "recover_common_factor",
    "CyclicModule", "KModClass", "NaturalModule", "WitnessTrace", "adjoint_relation_witness",
    "intersection_check", "kernel_polynomial", "maximal_isotropy_witness", "pairing_class",
    "skew_pair_check", "intersection_witness", "OreMatrix", "ddet_degree", "is_regular", "mat_arith",
    "matrix_gcd", "matrix_lcm", "regularize", "regularize_pair", "row_hermite", "OrePoly",
    "adjoint", "divide", "gcd_extended", "lcm", "ore_mul", "ore_witness", "parse_matrix",
    "parse_operator", "RatFunc", "derive", "hermite_reduce", "is_total_derivative",
    "ratfunc_arith"
]
