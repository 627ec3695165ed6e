"""Domino tilings of three-dimensional regions and their twist invariant."""

__version__ = "0.1.0"
