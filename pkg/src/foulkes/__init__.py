"""Foulkes characters of the symmetric groups and the full monomial groups G(r,1,n)."""

__version__ = "0.1.0"
