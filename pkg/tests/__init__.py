"""Tests package initializer to allow relative imports in test modules."""

__all__ = []
