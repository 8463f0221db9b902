"""
Hashed sparse features over a token window.

Each token gets a bias, its identity, lowercased identity, shape, the
offset-conjoined identity and shape of every token within ``window``
positions, the identities of its own and neighbouring words, and word/
sentence boundary flags. Feature strings are hashed with blake2b into
``[0, dim)``; duplicate indices within a token are removed.
"""

import hashlib
from functools import lru_cache
from typing import List, NamedTuple, Sequence, Tuple

import numpy as np

from ..tokenizer.bpe import BpeModel, TokenizedSentence

BOS = "<s>"
EOS = "</s>"


class SentenceFeatures(NamedTuple):
    """Concatenated feature indices plus the start offset of each token's block."""

    indices: np.ndarray
    offsets: np.ndarray

    @property
    def num_tokens(self) -> int:
        return len(self.offsets)

    def owners(self) -> np.ndarray:
        """Token position of every entry in ``indices``."""
        counts = np.diff(np.append(self.offsets, len(self.indices)))
        return np.repeat(np.arange(self.num_tokens), counts)


@lru_cache(maxsize=1 << 20)
def feature_index(feature: str, dim: int) -> int:
    digest = hashlib.blake2b(feature.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "little") % dim


def token_shape(token: str) -> str:
    has_digit = any(char.isdigit() for char in token)
    has_alpha = any(char.isalpha() for char in token)
    if has_digit and has_alpha:
        return "mixed"
    if has_digit:
        return "digit"
    if has_alpha:
        return "alpha"
    return "other"


def token_features(
    tokens: Sequence[str],
    owners: Sequence[int],
    words: Sequence[str],
    position: int,
    window: int = 2,
) -> List[str]:
    """Feature strings of the token at ``position``."""
    token = tokens[position]
    word = owners[position]
    features = ["bias", f"id={token}", f"lc={token.lower()}", f"shape={token_shape(token)}"]
    for offset in range(-window, window + 1):
        if offset == 0:
            continue
        other = position + offset
        if other < 0:
            neighbour = BOS
        elif other >= len(tokens):
            neighbour = EOS
        else:
            neighbour = tokens[other]
        features.append(f"t{offset}={neighbour}")
        features.append(f"s{offset}={token_shape(neighbour)}")
    features.append(f"w0={words[word]}")
    features.append(f"w-1={words[word - 1] if word > 0 else BOS}")
    features.append(f"w+1={words[word + 1] if word + 1 < len(words) else EOS}")
    if position == 0 or owners[position - 1] != word:
        features.append("word_start")
    if position + 1 == len(tokens) or owners[position + 1] != word:
        features.append("word_end")
        if word + 1 == len(words):
            features.append("sentence_end")
    if word == 0:
        features.append("first_word")
    return features


def extract_features(
    words: Sequence[str],
    sentence: TokenizedSentence,
    bpe: BpeModel,
    dim: int,
    window: int = 2,
) -> SentenceFeatures:
    tokens = [bpe.token_string(index) for index in sentence.tokens]
    owners: List[int] = []
    for word, (start, end) in enumerate(sentence.word_boundaries):
        owners.extend([word] * (end - start))

    indices: List[int] = []
    offsets: List[int] = []
    for position in range(len(tokens)):
        offsets.append(len(indices))
        seen = set()
        for feature in token_features(tokens, owners, words, position, window):
            index = feature_index(feature, dim)
            if index not in seen:
                seen.add(index)
                indices.append(index)
    return SentenceFeatures(np.asarray(indices, dtype=np.int64), np.asarray(offsets, dtype=np.int64))


def encode_sentence(
    words: Sequence[str], bpe: BpeModel, dim: int, window: int = 2
) -> Tuple[TokenizedSentence, SentenceFeatures]:
    sentence = bpe.encode(words)
    return sentence, extract_features(words, sentence, bpe, dim, window)
