"""Symmetric homology of algebras over the integers."""
