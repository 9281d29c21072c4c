"""Exact cohomological verification of Chow-Kuenneth, tautological-ring and
Schubert-calculus identities for intersections of two quadrics."""

from .supalg import CohClass, SpaceKind, SpaceSpec, make_space

__all__ = ["CohClass", "SpaceKind", "SpaceSpec", "make_space"]
__version__ = "0.1.0"
