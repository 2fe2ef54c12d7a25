"""Asymptotic composants of one-dimensional inflation tilings.

Exact computation of the asymptotic inflation fixed points of a primitive
inflation rule, their left and right asymptotic classes and the inflation's
permutation action, together with the comparison tests built on them.
"""

__version__ = "0.1.0"

from .composants import AsymptoticSignature, PositionedTiling, SeedPair, signature, stable_pairs
from .enumeration import classify, classify_rules, matrices_with_charpoly, rules_from_matrix
from .errors import AsymcompError
from .field import FieldElement, NumberField
from .invariants import (
    canonicalize,
    compare,
    isomorphic_strong,
    isomorphic_weak,
    mirror_test,
    structure_from_table,
)
from .oracle import oracle_check, verify_signature
from .poly import IntPolynomial, charpoly, parse_polynomial
from .rules import InflationRule, compose_rules, parse_rule, perron_data, power_rule, reverse_rule

__all__ = [
    "AsymcompError",
    "AsymptoticSignature",
    "FieldElement",
    "InflationRule",
    "IntPolynomial",
    "NumberField",
    "PositionedTiling",
    "SeedPair",
    "canonicalize",
    "charpoly",
    "classify",
    "classify_rules",
    "compare",
    "compose_rules",
    "isomorphic_strong",
    "isomorphic_weak",
    "matrices_with_charpoly",
    "mirror_test",
    "oracle_check",
    "parse_polynomial",
    "parse_rule",
    "perron_data",
    "power_rule",
    "reverse_rule",
    "rules_from_matrix",
    "signature",
    "stable_pairs",
    "structure_from_table",
    "verify_signature",
]
