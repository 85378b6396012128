"""Braid words, signatures and untwisting certificates for torus knots."""

__version__ = "0.1.0"
