"""
Configuration module for the spoken-to-written formatter.
Handles pipeline settings, environment variables, and run configuration.
"""

import os
from functools import lru_cache
from pathlib import Path
from typing import Optional

from pydantic import Field, field_validator
from pydantic_core import ValidationError as PydanticCoreValidationError
from pydantic_settings import BaseSettings as PydanticBaseSettings


def get_project_root() -> Path:
    """Get the project root directory."""
    return Path(__file__).parent.parent.parent


def default_grammar_dir() -> Path:
    """Directory holding the bundled grammar rule files."""
    return Path(__file__).parent.parent / "wfst" / "grammars"


class GrammarConfig(PydanticBaseSettings):
    """WFST grammar configuration."""

    model_config = {"env_file": None, "case_sensitive": False, "env_prefix": "GRAMMAR_"}

    dir: Path = Field(default_factory=default_grammar_dir)
    archive: Optional[Path] = Field(None)
    # Longest run of written words handed to one TN grammar search.
    max_entity_words: int = Field(3)

    @field_validator("max_entity_words")
    @classmethod
    def validate_max_entity_words(cls, value):
        if value < 1:
            raise ValueError("max_entity_words must be >= 1")
        return value


class TokenizerConfig(PydanticBaseSettings):
    """BPE tokenizer configuration."""

    model_config = {"env_file": None, "case_sensitive": False, "env_prefix": "BPE_"}

    vocab_size: int = Field(8000)
    model_path: Optional[Path] = Field(None)

    @field_validator("vocab_size")
    @classmethod
    def validate_vocab_size(cls, value):
        if value < 1:
            raise ValueError("vocab_size must be positive")
        return value


class TaggerConfig(PydanticBaseSettings):
    """Joint linear tagger configuration."""

    model_config = {"env_file": None, "case_sensitive": False, "env_prefix": "TAGGER_"}

    feature_dim: int = Field(1 << 20)
    window: int = Field(2)
    learning_rate: float = Field(0.5)
    epochs: int = Field(5)
    l2: float = Field(0.0)
    dropout: float = Field(0.0)
    seed: int = Field(13)
    model_path: Optional[Path] = Field(None)

    @field_validator("feature_dim")
    @classmethod
    def validate_feature_dim(cls, value):
        if value < 2 or value & (value - 1):
            raise ValueError("feature_dim must be a power of two")
        return value

    @field_validator("dropout")
    @classmethod
    def validate_dropout(cls, value):
        if not 0.0 <= value < 1.0:
            raise ValueError("dropout must be in [0, 1)")
        return value

    @field_validator("learning_rate")
    @classmethod
    def validate_learning_rate(cls, value):
        if value <= 0:
            raise ValueError("learning_rate must be > 0")
        return value


class DataConfig(PydanticBaseSettings):
    """Training data pipeline configuration."""

    model_config = {"env_file": None, "case_sensitive": False, "env_prefix": "DATA_"}

    validation_fraction: float = Field(0.10)
    validation_cap: int = Field(50_000)
    min_words: int = Field(4)
    paragraph_words: int = Field(0)  # 0 disables paragraph formation
    seed: int = Field(13)

    @field_validator("validation_fraction")
    @classmethod
    def validate_fraction(cls, value):
        if not 0.0 < value <= 1.0:
            raise ValueError("validation_fraction must be in (0, 1]")
        return value


class LoggingConfig(PydanticBaseSettings):
    """Logging configuration."""

    model_config = {"env_file": None, "case_sensitive": False, "env_prefix": "LOG_"}

    level: str = Field("INFO")
    format: str = Field("structured")  # structured, json, simple
    file: Optional[str] = Field(None)

    @field_validator("level")
    @classmethod
    def validate_log_level(cls, value):
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if value.upper() not in valid_levels:
            raise ValueError(f"Log level must be one of: {valid_levels}")
        return value.upper()

    @field_validator("format")
    @classmethod
    def validate_format(cls, value):
        if value not in ("structured", "json", "simple"):
            raise ValueError("Log format must be: structured, json, or simple")
        return value


class AppConfig(PydanticBaseSettings):
    """Main application configuration."""

    name: str = Field("spokenfmt", alias="APP_NAME")
    version: str = Field("1.0.0", alias="APP_VERSION")
    debug: bool = Field(False, alias="DEBUG")

    grammar: GrammarConfig = Field(default_factory=GrammarConfig)
    tokenizer: TokenizerConfig = Field(default_factory=TokenizerConfig)
    tagger: TaggerConfig = Field(default_factory=TaggerConfig)
    data: DataConfig = Field(default_factory=DataConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)

    model_config = {
        "env_file": None,
        "env_file_encoding": "utf-8",
        "case_sensitive": False,
        "extra": "ignore",
        "populate_by_name": True,
    }

    @property
    def app_name(self) -> str:
        return self.name

    @property
    def log_level(self) -> str:
        return os.getenv("LOG_LEVEL") or self.logging.level


@lru_cache()
def get_settings() -> AppConfig:
    """Get cached application configuration."""
    try:
        return AppConfig()
    except PydanticCoreValidationError:
        # A bad environment variable must not break imports. RunConfig.build
        # loads the environment again and reports the error as a usage error.
        return AppConfig.model_construct(
            grammar=GrammarConfig.model_construct(
                dir=default_grammar_dir(), archive=None, max_entity_words=3
            ),
            tokenizer=TokenizerConfig.model_construct(vocab_size=8000, model_path=None),
            tagger=TaggerConfig.model_construct(
                feature_dim=1 << 20,
                window=2,
                learning_rate=0.5,
                epochs=5,
                l2=0.0,
                dropout=0.0,
                seed=13,
                model_path=None,
            ),
            data=DataConfig.model_construct(
                validation_fraction=0.10,
                validation_cap=50_000,
                min_words=4,
                paragraph_words=0,
                seed=13,
            ),
            logging=LoggingConfig.model_construct(level="INFO", format="structured", file=None),
        )


def ensure_directories(*paths: Path) -> None:
    """Ensure the parent directories of output paths exist."""
    for path in paths:
        if path is not None:
            Path(path).parent.mkdir(parents=True, exist_ok=True)
