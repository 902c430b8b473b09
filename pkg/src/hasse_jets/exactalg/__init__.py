"""Exact coefficient fields, polynomials, Gröbner bases and linear algebra."""
from .fields import QQ, ExtensionField, FieldMismatch, ModInt, PrimeField, RationalField
from .groebner import (
    GroebnerBudgetExceeded,
    Ideal,
    MissingBasis,
    eliminate,
    groebner_basis,
    ideal_intersection,
    normal_form,
    reduce_poly,
)
from .linalg import LinearSystem, kernel_basis, rank, rref, solve, span_basis
from .ops import substitute, truncate_degree
from .poly import ParseError, Poly, PolyRing
from .ratfunc import RatFunc, RationalFunctionField, poly_gcd

__all__ = [
    "QQ",
    "ExtensionField",
    "FieldMismatch",
    "ModInt",
    "PrimeField",
    "RationalField",
    "RationalFunctionField",
    "RatFunc",
    "Poly",
    "PolyRing",
    "ParseError",
    "Ideal",
    "GroebnerBudgetExceeded",
    "MissingBasis",
    "groebner_basis",
    "reduce_poly",
    "normal_form",
    "eliminate",
    "ideal_intersection",
    "poly_gcd",
    "LinearSystem",
    "kernel_basis",
    "rank",
    "rref",
    "solve",
    "span_basis",
    "substitute",
    "truncate_degree",
]
