"""
Utils Module
Infrastructure components: exception hierarchy, run metrics and ordered parallel map.
"""

from .exceptions import (
    ArchiveFormatError,
    ConfigurationError,
    EmptyCorpusError,
    EmptyGrammarError,
    FormatterError,
    GrammarSyntaxError,
    LengthMismatchError,
    MarkupError,
    MissingEntryPointError,
    ModelFormatError,
    NoParse,
    NonFiniteLossError,
    RoundTripError,
    ScoringError,
    SearchLimitError,
    SymbolTableMismatchError,
    TagDecodeError,
    TagFormatError,
    WellFormednessError,
)
from .metrics import MetricsCollector, get_metrics_collector, track_execution_time
from .parallel import ordered_map

__all__ = [
    # Metrics
    "MetricsCollector",
    "get_metrics_collector",
    "track_execution_time",
    # Parallelism
    "ordered_map",
    # Exceptions
    "FormatterError",
    "TagDecodeError",
    "WellFormednessError",
    "LengthMismatchError",
    "TagFormatError",
    "GrammarSyntaxError",
    "EmptyGrammarError",
    "MissingEntryPointError",
    "SymbolTableMismatchError",
    "ArchiveFormatError",
    "NoParse",
    "SearchLimitError",
    "EmptyCorpusError",
    "RoundTripError",
    "MarkupError",
    "NonFiniteLossError",
    "ModelFormatError",
    "ScoringError",
    "ConfigurationError",
]
