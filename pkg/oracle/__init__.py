"""Exhaustive verification engines."""
