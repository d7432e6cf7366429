"""Homological stability checks for Iwahori-Hecke algebras of type B, by exact computation."""

__version__ = "0.1.0"
