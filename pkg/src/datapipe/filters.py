"""
Record filters for task-focused test sets.
"""

from typing import Iterable, Iterator, TypeVar, Union

from ..core.records import TaggedRecord
from .generate import AlignedExample

R = TypeVar("R", TaggedRecord, AlignedExample)


def has_entity(record: Union[TaggedRecord, AlignedExample]) -> bool:
    return any(tag.is_begin for tag in record.tags.itn)


def require_entities(records: Iterable[R]) -> Iterator[R]:
    """Keep only records with at least one ITN span."""
    return (record for record in records if has_entity(record))
