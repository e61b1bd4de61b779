"""Exact GF(p) cohomology of the truncated nilpotent algebra n+(A1^(1))(p)."""

from .algebra import RestrictedStructure, truncated_algebra, verify_restricted
from .cohomology import ordinary_h1, ordinary_h2
from .extensions import build_extension, verify_extension
from .restricted import RestrictedCochain2, restricted_h1, restricted_h2

__all__ = [
    "RestrictedCochain2",
    "RestrictedStructure",
    "build_extension",
    "ordinary_h1",
    "ordinary_h2",
    "restricted_h1",
    "restricted_h2",
    "truncated_algebra",
    "verify_extension",
    "verify_restricted",
]
