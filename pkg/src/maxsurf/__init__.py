"""Maximal surfaces in anti-De Sitter 3-space and their minimal relatives."""

__version__ = "0.1.0"
