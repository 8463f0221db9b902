"""
Corpus readers: plain text (one record per line) and JSON lines.
"""

from pathlib import Path
from typing import Iterable, Iterator, NamedTuple, Union

import orjson

from ..utils.exceptions import TagFormatError

JSONL_SUFFIXES = (".jsonl", ".json")


class CorpusRecord(NamedTuple):
    source_id: str
    text: str


def read_text_lines(lines: Iterable[str]) -> Iterator[CorpusRecord]:
    """Blank lines are skipped; ids are 1-based line numbers."""
    for line_number, line in enumerate(lines, start=1):
        text = line.rstrip("\r\n")
        if text.strip():
            yield CorpusRecord(str(line_number), text)


def read_jsonl_lines(lines: Iterable[str]) -> Iterator[CorpusRecord]:
    """``{"id": ..., "text": ...}`` per line; a missing id falls back to the line number."""
    for line_number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            data = orjson.loads(line)
            text = data["text"]
        except (orjson.JSONDecodeError, KeyError, TypeError) as e:
            raise TagFormatError(
                f"bad corpus record at line {line_number}: {e}", {"line": line_number}
            ) from e
        if not isinstance(text, str):
            raise TagFormatError(
                f"corpus record at line {line_number} has non-string text", {"line": line_number}
            )
        yield CorpusRecord(str(data.get("id", line_number)), text)


def read_corpus(path: Union[str, Path]) -> Iterator[CorpusRecord]:
    """Stream records from a ``.txt`` or ``.jsonl`` corpus file."""
    path = Path(path)
    reader = read_jsonl_lines if path.suffix.lower() in JSONL_SUFFIXES else read_text_lines
    with open(path, "r", encoding="utf-8") as handle:
        yield from reader(handle)
