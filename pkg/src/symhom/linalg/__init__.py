"""Exact sparse integer linear algebra."""

from .homology import (
    ComplexError,
    HomologyResult,
    complex_homology,
    direct_sum,
    homology_at,
    verify_complex,
)
from .snf import rank, smith_diagonal, smith_form, snf
from .sparse import SparseIntMatrix

__all__ = [
    "ComplexError",
    "HomologyResult",
    "SparseIntMatrix",
    "complex_homology",
    "direct_sum",
    "homology_at",
    "rank",
    "smith_diagonal",
    "smith_form",
    "snf",
    "verify_complex",
]
