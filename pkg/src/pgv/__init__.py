"""Exact computational group theory for finite p-groups."""

__version__ = "0.1.0"
