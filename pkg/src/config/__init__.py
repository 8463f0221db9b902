"""
Configuration package initialization.
"""

from .settings import (
    AppConfig,
    DataConfig,
    GrammarConfig,
    LoggingConfig,
    TaggerConfig,
    TokenizerConfig,
    default_grammar_dir,
    ensure_directories,
    get_project_root,
)
from .settings import get_settings as get_config

__all__ = [
    "AppConfig",
    "GrammarConfig",
    "TokenizerConfig",
    "TaggerConfig",
    "DataConfig",
    "LoggingConfig",
    "get_config",
    "get_project_root",
    "default_grammar_dir",
    "ensure_directories",
]
