"""Exact enumerative combinatorics around the odd double factorial (2n-1)!!."""

__version__ = "0.1.0"
