"""Exact-arithmetic toolkit for degeneracy loci and their double covers."""

__version__ = "0.1.0"

from .fields import (
    ExtField,
    Field,
    PrimeField,
    RationalField,
    SquareClass,
    ext_field_make,
    square_class,
)
from .linalg import Mat, mat_det, mat_rank_kernel

__all__ = [
    "ExtField",
    "Field",
    "Mat",
    "PrimeField",
    "RationalField",
    "SquareClass",
    "__version__",
    "ext_field_make",
    "mat_det",
    "mat_rank_kernel",
    "square_class",
]
