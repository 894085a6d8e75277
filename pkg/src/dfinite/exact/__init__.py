"""Exact arithmetic: polynomials, rational functions, number fields."""

from .numberfield import Box, NFElem, NumberField, isolating_boxes, quadratic_field
from .poly import Poly, poly_gcd, poly_lcm, poly_xgcd, resultant
from .ratfunc import RatFunc, as_ratfunc

__all__ = [
    "Box",
    "NFElem",
    "NumberField",
    "Poly",
    "RatFunc",
    "as_ratfunc",
    "isolating_boxes",
    "poly_gcd",
    "poly_lcm",
    "poly_xgcd",
    "quadratic_field",
    "resultant",
]
