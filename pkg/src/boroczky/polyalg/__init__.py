"""Sparse multivariate polynomial algebra over QQ and GF(p)."""

from .gcd import (
    discriminant,
    exact_quotient,
    gcd_list,
    gcd_multivariate,
    normalize,
    resultant,
    strip_factor,
)
from .groebner import (
    IdealPresentation,
    buchberger,
    divide,
    eliminate,
    ideal_intersection,
    ideal_membership,
    ideal_power,
    ideal_product,
    is_groebner_basis,
    normal_form,
    reduces_to_zero,
)
from .ring import (
    DEGREVLEX,
    LEX,
    MonomialOrder,
    MultiPoly,
    PolyRing,
    block_order,
    det,
    monomials_of_degree,
    parse_order,
)

__all__ = [
    "DEGREVLEX",
    "LEX",
    "IdealPresentation",
    "MonomialOrder",
    "MultiPoly",
    "PolyRing",
    "block_order",
    "buchberger",
    "det",
    "discriminant",
    "divide",
    "eliminate",
    "exact_quotient",
    "gcd_list",
    "gcd_multivariate",
    "ideal_intersection",
    "ideal_membership",
    "ideal_power",
    "ideal_product",
    "is_groebner_basis",
    "monomials_of_degree",
    "normal_form",
    "normalize",
    "parse_order",
    "reduces_to_zero",
    "resultant",
    "strip_factor",
]
