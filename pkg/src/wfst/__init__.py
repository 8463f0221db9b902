"""
WFST Module
Weighted transducers, the grammar rule compiler and the entity grammar set.
"""

from .archive import MAGIC as ARCHIVE_MAGIC
from .archive import VERSION as ARCHIVE_VERSION
from .compiler import GrammarCompiler, compile_grammar, parse_rules
from .fst import Arc, Fst, TapeKind
from .grammar_set import ENTITY_PRIORITY, GrammarSet, entry_name, load_grammars
from .normalize import EntityAnnotation, NormalizedText, normalize_with_alignment
from .ops import compose, concat, invert, optional, repeat, trim, union
from .search import TranslationResult, enumerate_paths, shortest_path
from .symbols import EPSILON, SPACE, SymbolTable

__all__ = [
    "Arc",
    "Fst",
    "TapeKind",
    "SymbolTable",
    "EPSILON",
    "SPACE",
    "compile_grammar",
    "parse_rules",
    "GrammarCompiler",
    "compose",
    "concat",
    "invert",
    "optional",
    "repeat",
    "trim",
    "union",
    "shortest_path",
    "enumerate_paths",
    "TranslationResult",
    "GrammarSet",
    "ENTITY_PRIORITY",
    "entry_name",
    "load_grammars",
    "normalize_with_alignment",
    "NormalizedText",
    "EntityAnnotation",
    "ARCHIVE_MAGIC",
    "ARCHIVE_VERSION",
]
