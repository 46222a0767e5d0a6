"""Exact verification lab for the spinor representation of linear canonical transformations."""

__version__ = "0.1.0"
