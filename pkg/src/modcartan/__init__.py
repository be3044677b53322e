"""Exact computations with modular Lie algebras of Cartan type."""

__version__ = "0.1.0"
