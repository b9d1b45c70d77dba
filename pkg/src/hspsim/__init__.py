"""Exact simulation and algebraic verification of the hidden subgroup algorithm."""
__version__ = "0.1.0"
