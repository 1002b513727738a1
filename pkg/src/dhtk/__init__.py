"""Discrete homotopy toolkit for graphs."""
__version__ = "0.1.0"
