"""Exact and asymptotic topological-complexity bounds for Pfaffian formats,
with small homology and sign-cell verifiers."""

from .errors import (BoundViolated, InconsistentFaces, InequalityViolated,
                     InvalidFormat, InvalidMap, NotSurjective, RecursionExhausted)
from .formats import (ChainFormat, CoupleFormat, QuantifierFormat, SetFormat,
                      fewnomial_format, polynomial_format, validate)

__version__ = "0.1.0"

__all__ = [
    "BoundViolated", "InconsistentFaces", "InequalityViolated", "InvalidFormat",
    "InvalidMap", "NotSurjective", "RecursionExhausted",
    "ChainFormat", "CoupleFormat", "QuantifierFormat", "SetFormat",
    "fewnomial_format", "polynomial_format", "validate",
]
