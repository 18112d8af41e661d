"""Insertion encodings of restricted growth functions and Cayley permutations."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    Basis,
    CayleyPermutation,
    avoids_basis,
    contains,
    generate_cayley,
    generate_matching_rgfs,
    generate_rgfs,
    is_matching_rgf,
    is_rgf,
    standardise,
)
from .regularity import ClassificationReport, classify, classify_h, classify_v  # noqa: E402

__all__ = [
    "Basis",
    "CayleyPermutation",
    "ClassificationReport",
    "avoids_basis",
    "classify",
    "classify_h",
    "classify_v",
    "contains",
    "generate_cayley",
    "generate_matching_rgfs",
    "generate_rgfs",
    "is_matching_rgf",
    "is_rgf",
    "standardise",
]
