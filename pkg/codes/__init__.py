"""Cyclic codes over fields and codes over R."""
