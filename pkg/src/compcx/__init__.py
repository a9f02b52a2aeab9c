"""Desk-scale compression complexity on a concrete total toy machine."""

__version__ = "0.1.0"
