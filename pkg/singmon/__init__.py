"""Exact computations for quasihomogeneous surface singularities."""

__version__ = "0.1.0"
