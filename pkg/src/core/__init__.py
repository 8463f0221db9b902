"""
Core Module
Tag taxonomies, tag sets, entity spans and the tag-column record format.
"""

from .records import TaggedRecord, format_record_line, parse_record_line, read_records
from .spans import EntitySpan, extract_itn_spans, repair_itn, spans_to_itn
from .tags import (
    ITN_CLASSES,
    TASK_CLASSES,
    TASK_ORDER,
    CapTag,
    DisfTag,
    EntityType,
    ItnTag,
    PunctTag,
    Tag,
    Task,
    class_index,
    decode_tag,
    num_classes,
    outside,
    parse_tag_line,
    serialize_tag_line,
    tag_from_index,
)
from .tagset import TagSet, ValidationResult, check_itn, validate_tagset

__all__ = [
    # Taxonomies
    "Task",
    "TASK_ORDER",
    "EntityType",
    "ItnTag",
    "PunctTag",
    "CapTag",
    "DisfTag",
    "Tag",
    "ITN_CLASSES",
    "TASK_CLASSES",
    "num_classes",
    "class_index",
    "tag_from_index",
    "outside",
    "decode_tag",
    "parse_tag_line",
    "serialize_tag_line",
    # Tag sets
    "TagSet",
    "ValidationResult",
    "check_itn",
    "validate_tagset",
    # Spans
    "EntitySpan",
    "extract_itn_spans",
    "spans_to_itn",
    "repair_itn",
    # Records
    "TaggedRecord",
    "parse_record_line",
    "format_record_line",
    "read_records",
]
