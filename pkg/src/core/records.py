"""
Tag-column record format.

One record per line, five tab-separated fields:
``tokens<TAB>itn<TAB>punct<TAB>cap<TAB>disf``, each a whitespace-separated
sequence of the same length.
"""

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Tuple

from ..utils.exceptions import LengthMismatchError, TagDecodeError, TagFormatError
from .tags import TASK_ORDER, parse_tag_line, serialize_tag_line
from .tagset import TagSet, validate_tagset

FIELD_COUNT = 5


@dataclass(frozen=True)
class TaggedRecord:
    """Words plus their word-level tags."""

    words: Tuple[str, ...]
    tags: TagSet

    def __post_init__(self):
        if not isinstance(self.words, tuple):
            object.__setattr__(self, "words", tuple(self.words))
        if len(self.words) != len(self.tags):
            raise LengthMismatchError(
                f"{len(self.words)} words but {len(self.tags)} tags",
                {"words": len(self.words), "tags": len(self.tags)},
            )

    def __len__(self) -> int:
        return len(self.words)


def parse_record_line(line: str, line_number: Optional[int] = None) -> TaggedRecord:
    """Parse one tag-column line; raises TagFormatError naming the line."""
    location = {"line": line_number} if line_number is not None else {}
    where = f" at line {line_number}" if line_number is not None else ""
    fields = line.rstrip("\r\n").split("\t")
    if len(fields) != FIELD_COUNT:
        raise TagFormatError(
            f"expected {FIELD_COUNT} tab-separated fields, found {len(fields)}{where}",
            {**location, "fields": len(fields)},
        )

    words = fields[0].split()
    try:
        sequences = {task: parse_tag_line(field, task) for task, field in zip(TASK_ORDER, fields[1:])}
    except TagDecodeError as e:
        raise TagFormatError(f"{e.message}{where}", {**location, **e.details}) from e

    tags = TagSet.from_tasks(sequences)
    result = validate_tagset(tags)
    if result.ok and len(tags) != len(words):
        raise TagFormatError(
            f"length mismatch: {len(words)} tokens, {len(tags)} tags{where}",
            {**location, "tokens": len(words), "tags": len(tags)},
        )
    if not result.ok:
        raise TagFormatError(
            f"{result.message}{where}", {**location, "position": result.position}
        )
    return TaggedRecord(tuple(words), tags)


def format_record_line(record: TaggedRecord) -> str:
    """Inverse of :func:`parse_record_line` (no trailing newline)."""
    fields = [" ".join(record.words)]
    fields.extend(serialize_tag_line(record.tags.task(task)) for task in TASK_ORDER)
    return "\t".join(fields)


def read_records(lines: Iterable[str]) -> Iterator[TaggedRecord]:
    """Parse a stream of tag-column lines, skipping blank lines."""
    for line_number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        yield parse_record_line(line, line_number)
