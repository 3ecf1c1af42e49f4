"""Exact computations for W(m,n), its mixed-product modules and their complexes."""

__version__ = "0.1.0"
