"""Finite-state morphology for Sorani Kurdish (Latin script)."""

__version__ = "0.1.0"
