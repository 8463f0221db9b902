"""
Tokenizer Module
Per-word BPE and word/token tag projection.
"""

from .bpe import END_OF_WORD, BpeModel, TokenizedSentence, train_bpe
from .projection import collapse_tags, majority_tag, project_tags

__all__ = [
    "BpeModel",
    "TokenizedSentence",
    "train_bpe",
    "END_OF_WORD",
    "project_tags",
    "collapse_tags",
    "majority_tag",
]
