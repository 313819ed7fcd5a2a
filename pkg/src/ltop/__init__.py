"""Desk-scale computations on metric completions of edge-weighted graphs."""

__version__ = "0.1.0"
