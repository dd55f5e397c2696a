"""Exact computations in quantised enveloping algebras and their positive parts."""

__version__ = "0.1.0"
