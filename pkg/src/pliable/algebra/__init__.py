"""Exact graded polynomial algebra: rings, polynomials, rational functions, series."""
from __future__ import annotations

from .arith import (
    divexact,
    divides,
    divmod_poly,
    factor_list,
    multiplicity,
    poly_gcd,
    poly_lcm,
    proportional,
    pseudo_remainder,
)
from .kernel import BACKEND
from .ops import (
    instantiate,
    multidegree,
    random_form,
    seeded_forms,
    substitute,
)
from .parse import ParseError, poly_parse, poly_print, ratfunc_parse
from .poly import AtomError, Poly
from .ratfunc import RatFunc
from .ring import Atom, GradedRing, RingError
from .series import TruncSeries, series_expand

__all__ = [
    "Atom",
    "AtomError",
    "BACKEND",
    "GradedRing",
    "ParseError",
    "Poly",
    "RatFunc",
    "RingError",
    "TruncSeries",
    "divexact",
    "divides",
    "divmod_poly",
    "factor_list",
    "instantiate",
    "multidegree",
    "multiplicity",
    "poly_gcd",
    "poly_lcm",
    "poly_parse",
    "poly_print",
    "proportional",
    "pseudo_remainder",
    "random_form",
    "ratfunc_parse",
    "seeded_forms",
    "series_expand",
    "substitute",
]
