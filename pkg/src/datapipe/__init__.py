"""
Data Pipeline Module
Training data manufacture: cleaning, spoken-form generation with gold tags,
disfluency markup, splits, statistics and synthetic corpora.
"""

from .clean import PUNCTUATION, CleanResult, clean_record, clean_with_reason, count_tokens
from .dialog_acts import (
    DisfluencySpan,
    MarkupKind,
    check_markup,
    map_dialog_acts,
    markup_example,
    parse_markup_line,
    read_markup,
)
from .filters import has_entity, require_entities
from .generate import (
    AlignedExample,
    case_tag,
    derive_tags,
    generate_example,
    split_punctuation,
    try_generate,
)
from .paragraphs import form_paragraphs, join_examples
from .pipeline import PrepareOptions, PrepareSummary, output_paths, prepare_corpus, prepare_markup
from .readers import CorpusRecord, read_corpus, read_jsonl_lines, read_text_lines
from .split import VALIDATION_CAP, VALIDATION_FRACTION, split_dataset, split_three_way, validation_size
from .stats import CorpusStats, corpus_stats
from .synth import iter_synthetic, synthesize_corpus, synthesize_sentence

__all__ = [
    # Cleaning
    "PUNCTUATION",
    "CleanResult",
    "clean_record",
    "clean_with_reason",
    "count_tokens",
    # Generation
    "AlignedExample",
    "case_tag",
    "split_punctuation",
    "derive_tags",
    "generate_example",
    "try_generate",
    # Disfluency markup
    "MarkupKind",
    "DisfluencySpan",
    "check_markup",
    "map_dialog_acts",
    "parse_markup_line",
    "read_markup",
    "markup_example",
    # Splits and statistics
    "VALIDATION_FRACTION",
    "VALIDATION_CAP",
    "validation_size",
    "split_dataset",
    "split_three_way",
    "CorpusStats",
    "corpus_stats",
    # Corpus handling
    "CorpusRecord",
    "read_corpus",
    "read_text_lines",
    "read_jsonl_lines",
    "form_paragraphs",
    "join_examples",
    "has_entity",
    "require_entities",
    "synthesize_corpus",
    "synthesize_sentence",
    "iter_synthetic",
    # Pipeline
    "PrepareOptions",
    "PrepareSummary",
    "output_paths",
    "prepare_corpus",
    "prepare_markup",
]
