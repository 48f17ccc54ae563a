"""Tropical Fay trisecant identity for the ultra-discrete periodic Toda lattice."""

__version__ = "0.1.0"
