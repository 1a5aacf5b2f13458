"""Stevin decimals, Cauchy's infinitesimal orders, and a computable ultrapower."""

from .decimals import (
    DecimalEnclosure,
    StevinDigits,
    cauchy_bisect,
    compare_strategies,
    digit_stability,
    enclosure_add,
    enclosure_mul,
    stevin_root,
    to_decimal,
)
from .exact import Polynomial, poly_eval, poly_parse, sign_change
from .lightstone import lightstone_render
from .orders import SeriesNumber, base_i, deriv_at, estimate_order_numeric, from_rational, order, st
from .ultrapower import FilterOracle, HyperNumber, classify, compare, embed, epsilon, omega, parse_generator, standard_part

__all__ = [
    "DecimalEnclosure",
    "FilterOracle",
    "HyperNumber",
    "Polynomial",
    "SeriesNumber",
    "StevinDigits",
    "base_i",
    "cauchy_bisect",
    "classify",
    "compare",
    "compare_strategies",
    "deriv_at",
    "digit_stability",
    "embed",
    "enclosure_add",
    "enclosure_mul",
    "epsilon",
    "estimate_order_numeric",
    "from_rational",
    "lightstone_render",
    "omega",
    "order",
    "parse_generator",
    "poly_eval",
    "poly_parse",
    "sign_change",
    "standard_part",
    "st",
    "stevin_root",
    "to_decimal",
]
