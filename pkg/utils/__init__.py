"""Shared errors, configuration and text helpers."""
