"""Exact generating-function asymptotics for the degenerate third Painleve equation."""

__version__ = "0.1.0"
