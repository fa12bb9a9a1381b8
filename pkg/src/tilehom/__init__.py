"""Integral homology of canonical projection tilings."""

__version__ = "0.1.0"
