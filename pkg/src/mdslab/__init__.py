"""Exact construction and verification of quadratic affine-type multiple
Dirichlet series over rational function fields."""

__version__ = "0.1.0"
