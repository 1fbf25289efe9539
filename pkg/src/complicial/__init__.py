"""Finite stratified simplicial sets, strict omega-categories, orientals and
Street nerves, with lifting-based checks for complicial structure."""

from .budget import Budget, BudgetExceeded
from .simplicial import (
    ComplexMap,
    Inclusion,
    MonotoneMap,
    SimplexRef,
    StratifiedComplex,
    evaluate_face,
    make_complex,
    validate_complex,
)

__all__ = [
    "Budget",
    "BudgetExceeded",
    "ComplexMap",
    "Inclusion",
    "MonotoneMap",
    "SimplexRef",
    "StratifiedComplex",
    "evaluate_face",
    "make_complex",
    "validate_complex",
]
