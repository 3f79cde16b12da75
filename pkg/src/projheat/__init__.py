"""Exact-arithmetic toolkit for the projective heat map on pentagons."""

__version__ = "0.1.0"
