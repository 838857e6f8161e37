"""Singular points of curve and surface germs via jet arithmetic."""

__version__ = "0.1.0"
