"""Exact computations with A(∞)- and L(∞)-operads and algebras."""

__version__ = "0.1.0"
