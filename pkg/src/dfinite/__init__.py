"""Exact and arbitrary-precision tools for linear ODEs with polynomial coefficients."""

__version__ = "0.1.0"
