"""Quantum indices of real rational plane curves and refined tropical counts."""

__version__ = "0.1.0"
