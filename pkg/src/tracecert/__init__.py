"""Exact-arithmetic toolkit for certifying non-integral traces of knot groups."""

__version__ = "0.1.0"
