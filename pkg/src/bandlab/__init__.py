"""Exact-arithmetic laboratory for bands, cluster seeds, and T-systems."""

__version__ = "0.1.0"
