"""Generating-pair invariants of finite groups."""

__version__ = "0.1.0"
