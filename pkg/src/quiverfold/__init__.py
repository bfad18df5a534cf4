"""Exact computation with preprojective algebras, quiver folding and ideal monoids."""

from .engine import normal_form_engine
from .linalg import PrimeField, RationalField, parse_field
from .presentations import (
    weighted_path_presentation,
    generalized_preprojective_presentation,
    preprojective_presentation,
)
from .quiver import CartanTriple, GroupAction, Quiver, QuiverAutomorphism, fold, make_quiver

__version__ = "0.1.0"

__all__ = [
    "CartanTriple",
    "GroupAction",
    "PrimeField",
    "Quiver",
    "QuiverAutomorphism",
    "RationalField",
    "fold",
    "weighted_path_presentation",
    "generalized_preprojective_presentation",
    "make_quiver",
    "normal_form_engine",
    "parse_field",
    "preprojective_presentation",
    "__version__",
]
