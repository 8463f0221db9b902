"""
CLI Module
Command-line entry points for grammar compilation, data preparation,
tagger training, tag application and evaluation.
"""

from .config import RunConfig
from .main import cli, main

__all__ = ["cli", "main", "RunConfig"]
