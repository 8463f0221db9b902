"""
Tag Application Module
Stage 2 formatting: ITN spans, disfluency removal, case and punctuation.
"""

from .apply import (
    FormattedOutput,
    apply_case,
    apply_tags,
    capitalize_first,
    merge_span_tags,
    remove_disfluencies,
)
from .batch import apply_records, report_line, write_outputs

__all__ = [
    "FormattedOutput",
    "apply_tags",
    "merge_span_tags",
    "remove_disfluencies",
    "apply_case",
    "capitalize_first",
    "apply_records",
    "write_outputs",
    "report_line",
]
