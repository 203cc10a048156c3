"""Monodromy factorizations of Lefschetz fibrations and their invariants."""

__version__ = "0.1.0"
