"""Invariant polynomials, invariant systems and declared model data."""

from .invariants import UnknownInvariant, build_invariant
from .models import UnknownModel, model
from .types import BoundaryFactor, Invariant, InvariantSystem, PolynomialModel, TypoRecord

__all__ = [
    "BoundaryFactor", "Invariant", "InvariantSystem", "PolynomialModel", "TypoRecord",
    "UnknownInvariant", "UnknownModel", "build_invariant", "model",
]
