"""Exact facial structure of convex sets: minimal faces, intrinsic cores,
face lattices, linear closure and proper separation."""

from .polyset import HSet, LinearMap, Row, VSet

__all__ = ["HSet", "VSet", "Row", "LinearMap"]
__version__ = "0.1.0"
