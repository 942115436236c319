"""Exact arithmetic over Q(i) adjoined formal parameters."""
from .gaussian import GaussianRational
from .field import (CompiledFE, FieldElement, ParamPoly, ParamSpace, evaluate_complex,
                    evaluate_float, get_space)
from .linalg import determinant, row_reduce, solve_affine
from .relations import Relation, reduce_modulo_relation, reduce_modulo_relations
from .univariate import (RationalFunction, TaylorSeries, normalize_rational,
                         partial_fraction_decompose, recombine, series_arith,
                         taylor_coefficients)

__all__ = [
    "GaussianRational", "CompiledFE", "FieldElement", "ParamPoly", "ParamSpace",
    "evaluate_complex", "evaluate_float", "get_space", "determinant", "row_reduce",
    "solve_affine", "Relation", "reduce_modulo_relation", "reduce_modulo_relations",
    "RationalFunction", "TaylorSeries", "normalize_rational", "partial_fraction_decompose",
    "recombine", "series_arith", "taylor_coefficients",
]
