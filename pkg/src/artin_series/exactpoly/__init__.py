"""Exact fields, sparse polynomials, Groebner bases and linear algebra."""

from .fields import GF, QQ, ModP, PrimeField, RationalField, field_from_tag
from .groebner import GroebnerBasis, buchberger, ideal_membership, is_groebner, normal_form
from .linalg import Echelon, kernel, rank, solve, span
from .parse import parse_polynomial, variables_in
from .poly import Monomial, Polynomial, PolyRing, degrevlex_key

__all__ = [
    "GF", "QQ", "ModP", "PrimeField", "RationalField", "field_from_tag",
    "GroebnerBasis", "buchberger", "ideal_membership", "is_groebner", "normal_form",
    "Echelon", "kernel", "rank", "solve", "span",
    "parse_polynomial", "variables_in",
    "Monomial", "Polynomial", "PolyRing", "degrevlex_key",
]
