"""Exact computer algebra for quadratic and nonhomogeneous quadratic algebras."""

__version__ = "0.1.0"
