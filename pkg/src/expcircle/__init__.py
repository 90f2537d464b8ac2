"""Exact computations on the finite subset spaces exp_k(S^1) of the circle."""

__version__ = "0.1.0"
