"""Hasse-Schmidt systems, prolongations and jet spaces with exact arithmetic."""
__version__ = "0.1.0"
