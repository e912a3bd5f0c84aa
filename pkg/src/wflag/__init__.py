"""Hilbert series, equations and threefold sections of weighted flag varieties."""

__version__ = "0.1.0"
