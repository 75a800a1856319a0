"""Exact prime graphs, degree patterns and OD arithmetic for finite simple groups."""

from .arith import Factorization, factor, primitive_prime_divisors
from .catalog import order, parse_group_token
from .graph import PrimeGraph, degree_pattern, independence_number, vartheta
from .spectra import prime_graph, spectrum_of

__all__ = [
    "Factorization",
    "PrimeGraph",
    "degree_pattern",
    "factor",
    "independence_number",
    "order",
    "parse_group_token",
    "prime_graph",
    "primitive_prime_divisors",
    "spectrum_of",
    "vartheta",
]
