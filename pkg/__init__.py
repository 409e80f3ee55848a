"""Gaussian Riesz potentials on variable-exponent Lebesgue spaces."""

__version__ = "0.1.0"
