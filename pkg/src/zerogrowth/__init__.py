"""Finite-sample numerics for sequences of entire functions of bounded order."""

__all__ = ["__version__"]

__version__ = "0.1.0"
