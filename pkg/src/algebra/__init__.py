"""
Capa algebraica: cuerpos finitos, polinomios en una variable y polinomios
con graduación de peso en (x, s, t).
"""

from .finite_field import ExtField, FiniteField, PrimeField, field_make, field_of_order, prime_field
from .unipoly import (
    FieldDomain,
    PolynomialDomain,
    UniPoly,
    poly_factor,
    poly_gcd,
    resultant,
    resultant_coeffs,
    roots_in,
    squarefree_decomposition,
)
from .weighted_poly import (
    INHOMOGENEOUS,
    ZZ,
    CoefficientRing,
    DehomForm,
    WeightedBivar,
    XPoly,
    dehomogenize,
    fp,
    ord_of,
    prime_factors,
    rehomogenize,
    wb_add,
    wb_exact_div,
    wb_gcd,
    wb_mul,
    wb_squarefree_check,
    weight_of,
    weighted_factorization,
)

__all__ = [
    "ExtField",
    "FiniteField",
    "PrimeField",
    "field_make",
    "field_of_order",
    "prime_field",
    "FieldDomain",
    "PolynomialDomain",
    "UniPoly",
    "poly_factor",
    "poly_gcd",
    "resultant",
    "resultant_coeffs",
    "roots_in",
    "squarefree_decomposition",
    "INHOMOGENEOUS",
    "ZZ",
    "CoefficientRing",
    "DehomForm",
    "WeightedBivar",
    "XPoly",
    "dehomogenize",
    "fp",
    "ord_of",
    "prime_factors",
    "rehomogenize",
    "wb_add",
    "wb_exact_div",
    "wb_gcd",
    "wb_mul",
    "wb_squarefree_check",
    "weight_of",
    "weighted_factorization",
]
