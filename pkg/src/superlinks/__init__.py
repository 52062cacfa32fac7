"""Multivariable link invariants from typical modules over type I Lie superalgebras."""

__version__ = "0.1.0"
