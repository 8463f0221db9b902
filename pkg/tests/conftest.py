"""
Test fixtures and configuration for spokenfmt.
"""
import os

import pytest

# Set test environment
os.environ["TESTING"] = "true"
os.environ["LOG_LEVEL"] = "ERROR"

from src.config import get_config
from src.config.settings import TaggerConfig, default_grammar_dir
from src.core import TaggedRecord
from src.datapipe import generate_example, synthesize_corpus
from src.tokenizer import train_bpe
from src.utils import get_metrics_collector
from src.wfst import GrammarSet


@pytest.fixture
def test_config():
    """Provide test configuration."""
    return get_config()


@pytest.fixture(autouse=True)
def reset_metrics():
    """Every test starts with an empty metrics registry."""
    get_metrics_collector().reset()
    yield
    get_metrics_collector().reset()


# ========================================
# Grammars
# ========================================

@pytest.fixture(scope="session")
def grammar_dir():
    return default_grammar_dir()


@pytest.fixture(scope="session")
def grammars(grammar_dir):
    """The bundled grammar set, compiled once per session."""
    return GrammarSet.from_directory(grammar_dir)


@pytest.fixture(scope="session")
def archive_path(grammars, tmp_path_factory):
    path = tmp_path_factory.mktemp("grammars") / "grammars.far"
    grammars.save(path)
    return path


# ========================================
# Corpora
# ========================================

@pytest.fixture(scope="session")
def synthetic_sentences():
    """Small written-form corpus covering every entity type."""
    return synthesize_corpus(400, seed=7)


@pytest.fixture(scope="session")
def synthetic_records(synthetic_sentences, grammars):
    """Tagged records generated from the synthetic corpus (round-trip failures skipped)."""
    records = []
    for index, sentence in enumerate(synthetic_sentences):
        try:
            example = generate_example(sentence, grammars, str(index))
        except Exception:
            continue
        records.append(example.to_record())
    return records


@pytest.fixture(scope="session")
def bpe(synthetic_records):
    return train_bpe((record.words for record in synthetic_records), 300)


@pytest.fixture
def small_tagger_config():
    return TaggerConfig(feature_dim=1 << 16, epochs=3, learning_rate=0.5, seed=5)


@pytest.fixture
def phone_record():
    """Spoken phone-number request with gold tags."""
    from tests.utils.builders import TagSetBuilder

    words = (
        "please call me back at eight oh five six seven zero zero four two three".split()
    )
    tags = (
        TagSetBuilder(len(words))
        .entity("numeric", 5, 15)
        .punct(14, "period")
        .cap(0, "C")
        .build()
    )
    return TaggedRecord(tuple(words), tags)


@pytest.fixture
def write_lines(tmp_path):
    """Write lines to a file under tmp_path and return its path."""

    def _write(name, lines):
        path = tmp_path / name
        path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
        return path

    return _write
