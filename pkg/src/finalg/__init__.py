"""Exact finite groups, finite rings and group rings, with checks of realizability claims."""

__version__ = "0.1.0"
