"""Exact character theory of the symmetric group and T-system enumeration."""

__version__ = "0.1.0"
