"""Chebyshev arithmetic, fuzzy extraction and hashing primitives."""
