"""Exact construction and verification of flat pseudo-Euclidean Lie algebras."""

from .algebra import MetricLieAlgebra, fingerprint, modular_vector, validate_algebra
from .connection import flatness_report, is_flat, levi_civita, novikov_check
from .report import CheckReport, PreconditionError

__all__ = [
    "CheckReport",
    "MetricLieAlgebra",
    "PreconditionError",
    "fingerprint",
    "flatness_report",
    "is_flat",
    "levi_civita",
    "modular_vector",
    "novikov_check",
    "validate_algebra",
]

__version__ = "0.1.0"
