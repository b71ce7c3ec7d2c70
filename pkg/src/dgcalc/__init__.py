"""Exact computations with finite DG categories presented by DG quivers."""

__version__ = "0.1.0"
