"""Exact invariants and endomorphism-algebra certificates for superelliptic Jacobians."""

from .curve import CurveFamily, family_from_polynomial, genus, make_family
from .errors import (
    InconclusiveError,
    RegimeError,
    SuperjacError,
    ValidationError,
    VerificationError,
)
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CurveFamily",
    "InconclusiveError",
    "RegimeError",
    "SuperjacError",
    "ValidationError",
    "VerificationError",
    "family_from_polynomial",
    "genus",
    "make_family",
]
