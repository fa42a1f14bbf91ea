"""
Database package: SQLite run registry.
"""

from .run_registry import RunRegistry

__all__ = ['RunRegistry']
