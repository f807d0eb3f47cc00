"""Skeletal ribbon fusion categories: verifiers, tree calculus and modular data."""
from __future__ import annotations

from .fusion_ring import FusionRing, MalformedInputError, fp_dimensions, make_ring, validate_ring
from .scalar import Cyclotomic
from .skeletal import SkeletalData, check_all, gauge_transform

__all__ = [
    "Cyclotomic", "FusionRing", "MalformedInputError", "SkeletalData", "check_all",
    "fp_dimensions", "gauge_transform", "make_ring", "validate_ring",
]
__version__ = "0.1.0"
