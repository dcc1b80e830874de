"""Invariants of Landau-Ginzburg orbifolds defined by invertible polynomials."""

__version__ = "0.1.0"
