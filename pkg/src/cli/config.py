"""
Run configuration for CLI commands.

Settings from the environment supply defaults; command-line flags override
them. Every referenced input path is validated here, before any command
starts processing.
"""

from pathlib import Path
from typing import List, Optional

import click
from pydantic import BaseModel, ConfigDict, DirectoryPath, Field, FilePath, ValidationError

from ..config.settings import AppConfig, TaggerConfig


class RunConfig(BaseModel):
    """Validated inputs and parameters of one CLI invocation."""

    model_config = ConfigDict(frozen=True)

    grammar_dir: DirectoryPath
    archive: Optional[FilePath] = None
    bpe_model: Optional[FilePath] = None
    tagger_model: Optional[FilePath] = None
    tags: Optional[FilePath] = None
    inputs: List[FilePath] = Field(default_factory=list)
    seed: int = 13
    vocab_size: int = Field(8000, ge=1)
    jobs: int = Field(1, ge=1)
    max_entity_words: int = Field(3, ge=1)
    tagger: TaggerConfig = Field(default_factory=TaggerConfig)

    @classmethod
    def build(cls, settings: Optional[AppConfig] = None, **flags) -> "RunConfig":
        """Overlay non-None ``flags`` on the settings defaults.

        Tagger hyperparameters are passed as ``tagger_<field>`` flags. Without
        ``settings`` the environment is loaded again, so an invalid variable
        surfaces here as a usage error.
        """
        if settings is None:
            try:
                settings = AppConfig()
            except ValidationError as e:
                raise click.UsageError(_describe(e)) from None
        tagger_flags = {
            name[len("tagger_") :]: value
            for name, value in flags.items()
            if name.startswith("tagger_") and name != "tagger_model" and value is not None
        }
        values = dict(
            grammar_dir=settings.grammar.dir,
            archive=settings.grammar.archive,
            bpe_model=settings.tokenizer.model_path,
            tagger_model=settings.tagger.model_path,
            seed=settings.data.seed,
            vocab_size=settings.tokenizer.vocab_size,
            max_entity_words=settings.grammar.max_entity_words,
        )
        values.update(
            {
                name: value
                for name, value in flags.items()
                if value is not None and (not name.startswith("tagger_") or name == "tagger_model")
            }
        )
        try:
            tagger = TaggerConfig(**{**settings.tagger.model_dump(), **tagger_flags})
            return cls(tagger=tagger, **values)
        except ValidationError as e:
            raise click.UsageError(_describe(e)) from None


def _describe(error: ValidationError) -> str:
    problems = []
    for item in error.errors():
        where = ".".join(str(part) for part in item["loc"]) or "config"
        value = item.get("input")
        suffix = f" ({value})" if isinstance(value, (str, int, float, Path)) else ""
        problems.append(f"{where}: {item['msg']}{suffix}")
    return "invalid configuration: " + "; ".join(problems)
