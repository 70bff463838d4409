"""
Model - payoff space, price functional and admissible acceptance triples
"""

from .payoff import (
    PayoffSpace, PriceFunctional, CANONICAL_PAYOFFS, CANONICAL_PRICE, price, payoff_from_coefficients,
)
from .triple import (
    ORTHANT_CONE_RADIUS, AdmissibleTriple, basic_triple, twisted_triple, custom_triple,
    triple_by_name, no_arbitrage_margin, check_no_arbitrage,
)
from .descriptor import PatchSpec, ModelDescriptor, parse_descriptor, load_descriptor

__all__ = [
    'PayoffSpace',
    'PriceFunctional',
    'CANONICAL_PAYOFFS',
    'CANONICAL_PRICE',
    'price',
    'payoff_from_coefficients',
    'ORTHANT_CONE_RADIUS',
    'AdmissibleTriple',
    'basic_triple',
    'twisted_triple',
    'custom_triple',
    'triple_by_name',
    'no_arbitrage_margin',
    'check_no_arbitrage',
    'PatchSpec',
    'ModelDescriptor',
    'parse_descriptor',
    'load_descriptor',
]
