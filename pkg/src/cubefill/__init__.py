"""Finite cube complexes with group actions: complexes of groups, their
developments, quotient link checks and Dehn-filling bookkeeping."""

__version__ = "0.1.0"
