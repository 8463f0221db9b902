"""
Custom exceptions for the spoken-to-written formatter.
"""


class FormatterError(Exception):
    """Base exception for all formatter errors."""

    def __init__(self, message: str, details: dict = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}


class TagDecodeError(FormatterError):
    """Raised when a serialized tag string is not part of a taxonomy."""

    pass


class WellFormednessError(FormatterError):
    """Raised when an ITN tag sequence has an orphan or mismatched continuation."""

    pass


class LengthMismatchError(FormatterError):
    """Raised when parallel sequences disagree in length."""

    pass


class TagFormatError(FormatterError):
    """Raised when a tag-column record cannot be parsed."""

    pass


class GrammarSyntaxError(FormatterError):
    """Raised when grammar rule source does not parse."""

    pass


class EmptyGrammarError(FormatterError):
    """Raised when a compiled grammar has no accepting path."""

    pass


class MissingEntryPointError(FormatterError):
    """Raised when a rule directory lacks an ``itn_<entity>`` entry point."""

    pass


class SymbolTableMismatchError(FormatterError):
    """Raised when two machines over different symbol tables are combined."""

    pass


class ArchiveFormatError(FormatterError):
    """Raised when a grammar archive is corrupt or of an unknown version."""

    pass


class NoParse(FormatterError):
    """Raised when a grammar has no accepting path for an input.

    This is a normal outcome; tag application falls back to verbatim words.
    """

    pass


class SearchLimitError(FormatterError):
    """Raised when a path search exceeds its expansion budget."""

    pass


class EmptyCorpusError(FormatterError):
    """Raised when an operation needs at least one record and got none."""

    pass


class RoundTripError(FormatterError):
    """Raised when a generated example does not reproduce its written text."""

    pass


class MarkupError(FormatterError):
    """Raised when disfluency markup spans are malformed."""

    pass


class NonFiniteLossError(FormatterError):
    """Raised when a loss value is NaN, infinite or negative."""

    pass


class ModelFormatError(FormatterError):
    """Raised when a model file is corrupt or of an unknown version."""

    pass


class ScoringError(FormatterError):
    """Raised when prediction and gold streams cannot be aligned."""

    pass


class ConfigurationError(FormatterError):
    """Raised when run configuration is invalid."""

    pass
