"""Symbolic-combinatorial engine for serial categories and weighted
projective lines: Hom/Ext dimension tables, Ext-quivers, twist functors,
perpendicular categories, and thick-subcategory enumeration."""

from . import lgroup, linalg, nilrep, quiver, serial, wpl
from .errors import WpcError

__all__ = ["lgroup", "linalg", "nilrep", "quiver", "serial", "wpl", "WpcError"]
