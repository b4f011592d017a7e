"""Exact-arithmetic effective slice spectral sequence engine for kq and L."""

__version__ = "0.1.0"
