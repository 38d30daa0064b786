"""Homological shift ideals of monomial ideals and edge ideal powers."""

__version__ = "0.1.0"
