"""
Per-word byte-pair encoding.

Merges are learned over the characters of each word, never across words,
so word boundaries live in ``TokenizedSentence.word_boundaries``. The
``</w>`` end-of-word marker is display-only: ``pieces`` appends it to the last
token of each word, while merges, the vocabulary and token ids never carry
it. Characters outside the training alphabet fall back to UTF-8 byte tokens
``<0xNN>``.
"""

import heapq
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Sequence, Set, Tuple, Union

import orjson

from ..config.logging_config import get_logger
from ..utils.exceptions import ConfigurationError, EmptyCorpusError, ModelFormatError
from ..utils.metrics import track_execution_time

END_OF_WORD = "</w>"
FORMAT_VERSION = 1
BYTE_TOKENS = 256

logger = get_logger(__name__)

Pair = Tuple[str, str]


def byte_token(value: int) -> str:
    return f"<0x{value:02X}>"


@dataclass(frozen=True)
class TokenizedSentence:
    """Token ids plus, for each word, its ``[start, end)`` token range."""

    tokens: Tuple[int, ...]
    word_boundaries: Tuple[Tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def num_words(self) -> int:
        return len(self.word_boundaries)


@dataclass
class BpeModel:
    """Alphabet, ordered merges and the derived vocabulary."""

    alphabet: Tuple[str, ...]
    merges: Tuple[Pair, ...] = ()
    vocab: Dict[str, int] = field(default_factory=dict, init=False)
    _ranks: Dict[Pair, int] = field(default_factory=dict, init=False, repr=False, compare=False)
    _cache: Dict[str, Tuple[str, ...]] = field(
        default_factory=dict, init=False, repr=False, compare=False
    )

    def __post_init__(self):
        self.alphabet = tuple(self.alphabet)
        self.merges = tuple(tuple(pair) for pair in self.merges)
        for symbol in self.alphabet:
            if len(symbol) != 1:
                raise ModelFormatError(f"alphabet entry {symbol!r} is not one character", {})
            self.vocab.setdefault(symbol, len(self.vocab))
        for rank, (left, right) in enumerate(self.merges):
            if left not in self.vocab or right not in self.vocab:
                raise ModelFormatError(
                    f"merge {rank} ({left} {right}) uses a symbol not yet in the vocabulary",
                    {"merge": rank},
                )
            self._ranks.setdefault((left, right), rank)
            self.vocab.setdefault(left + right, len(self.vocab))
        self._inverse = {index: symbol for symbol, index in self.vocab.items()}
        self._byte_base = len(self.vocab)

    @property
    def vocab_size(self) -> int:
        """Learned vocabulary (alphabet plus merged symbols), byte tokens excluded."""
        return len(self.vocab)

    @property
    def num_ids(self) -> int:
        return len(self.vocab) + BYTE_TOKENS

    # ---- segmentation -------------------------------------------------

    def segment(self, word: str) -> Tuple[str, ...]:
        """Split one word into subword strings by applying merges in learned order."""
        cached = self._cache.get(word)
        if cached is not None:
            return cached
        symbols = list(word)
        while len(symbols) > 1:
            best_rank, best_pair = None, None
            for pair in zip(symbols, symbols[1:]):
                rank = self._ranks.get(pair)
                if rank is not None and (best_rank is None or rank < best_rank):
                    best_rank, best_pair = rank, pair
            if best_pair is None:
                break
            symbols = _merge_pair(symbols, best_pair)
        result = tuple(symbols)
        if len(self._cache) < 100_000:
            self._cache[word] = result
        return result

    def _ids_for(self, piece: str) -> List[int]:
        index = self.vocab.get(piece)
        if index is not None:
            return [index]
        # Only single characters can be missing; they fall back to bytes.
        return [self._byte_base + b for b in piece.encode("utf-8")]

    def encode(self, words: Sequence[str]) -> TokenizedSentence:
        tokens: List[int] = []
        boundaries: List[Tuple[int, int]] = []
        for word in words:
            start = len(tokens)
            for piece in self.segment(word):
                tokens.extend(self._ids_for(piece))
            boundaries.append((start, len(tokens)))
        return TokenizedSentence(tuple(tokens), tuple(boundaries))

    def token_string(self, index: int) -> str:
        if index >= self._byte_base:
            return byte_token(index - self._byte_base)
        return self._inverse[index]

    def pieces(self, sentence: TokenizedSentence) -> List[str]:
        """Token strings for display; the last token of each word gets the end-of-word marker."""
        strings = [self.token_string(index) for index in sentence.tokens]
        for _, end in sentence.word_boundaries:
            if end > 0:
                strings[end - 1] += END_OF_WORD
        return strings

    def decode_word(self, ids: Sequence[int]) -> str:
        buffer = bytearray()
        for index in ids:
            if index >= self._byte_base:
                buffer.append(index - self._byte_base)
            else:
                buffer.extend(self._inverse[index].encode("utf-8"))
        return buffer.decode("utf-8", errors="replace")

    def decode(self, sentence: TokenizedSentence) -> List[str]:
        return [
            self.decode_word(sentence.tokens[start:end]) for start, end in sentence.word_boundaries
        ]

    # ---- persistence --------------------------------------------------

    def dumps(self) -> str:
        lines = [
            f"#bpe version={FORMAT_VERSION} vocab_size={self.vocab_size}",
            orjson.dumps(list(self.alphabet)).decode("utf-8"),
        ]
        lines.extend(f"{left} {right}" for left, right in self.merges)
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "BpeModel":
        lines = text.splitlines()
        if len(lines) < 2 or not lines[0].startswith("#bpe "):
            raise ModelFormatError("not a BPE model file (missing header)", {"line": 1})
        header = dict(
            item.split("=", 1) for item in lines[0].split()[1:] if "=" in item
        )
        if header.get("version") != str(FORMAT_VERSION):
            raise ModelFormatError(
                f"unsupported BPE model version {header.get('version')!r}", {"line": 1}
            )
        try:
            alphabet = orjson.loads(lines[1])
        except orjson.JSONDecodeError as e:
            raise ModelFormatError(f"bad alphabet line: {e}", {"line": 2}) from e

        merges: List[Pair] = []
        for line_number, line in enumerate(lines[2:], start=3):
            if not line.strip():
                continue
            parts = line.split(" ")
            if len(parts) != 2 or not all(parts):
                raise ModelFormatError(
                    f"merge line {line_number} must be 'left right'", {"line": line_number}
                )
            merges.append((parts[0], parts[1]))
        model = cls(tuple(alphabet), tuple(merges))
        expected = header.get("vocab_size")
        if expected is not None and int(expected) != model.vocab_size:
            raise ModelFormatError(
                f"header vocab_size {expected} does not match model ({model.vocab_size})",
                {"line": 1},
            )
        return model

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8")

    @classmethod
    def load(cls, path: Union[str, Path]) -> "BpeModel":
        return cls.loads(Path(path).read_text(encoding="utf-8"))


def _merge_pair(symbols: List[str], pair: Pair) -> List[str]:
    merged: List[str] = []
    i = 0
    while i < len(symbols):
        if i + 1 < len(symbols) and symbols[i] == pair[0] and symbols[i + 1] == pair[1]:
            merged.append(pair[0] + pair[1])
            i += 2
        else:
            merged.append(symbols[i])
            i += 1
    return merged


def _pairs(symbols: Sequence[str]) -> Counter:
    return Counter(zip(symbols, symbols[1:]))


@track_execution_time("bpe_train")
def train_bpe(corpus: Iterable[Sequence[str]], vocab_size: int) -> BpeModel:
    """Learn merges from a stream of word sequences.

    Repeatedly merges the most frequent adjacent pair (ties go to the
    lexicographically smallest pair) until the vocabulary reaches
    ``vocab_size`` or no pair occurs at least twice.
    """
    word_counts: Counter = Counter()
    for words in corpus:
        word_counts.update(w for w in words if w)
    if not word_counts:
        raise EmptyCorpusError("cannot train BPE on an empty corpus", {})

    alphabet = tuple(sorted({char for word in word_counts for char in word}))
    if vocab_size < len(alphabet):
        raise ConfigurationError(
            f"vocab_size {vocab_size} is smaller than the alphabet ({len(alphabet)})",
            {"vocab_size": vocab_size, "alphabet": len(alphabet)},
        )

    words = sorted(word_counts)
    frequency = [word_counts[w] for w in words]
    segments: List[List[str]] = [list(w) for w in words]

    pair_counts: Dict[Pair, int] = defaultdict(int)
    pair_words: Dict[Pair, Set[int]] = defaultdict(set)
    for index, symbols in enumerate(segments):
        for pair, count in _pairs(symbols).items():
            pair_counts[pair] += count * frequency[index]
            pair_words[pair].add(index)

    heap = [(-count, pair) for pair, count in pair_counts.items()]
    heapq.heapify(heap)

    vocab: Set[str] = set(alphabet)
    merges: List[Pair] = []
    while len(vocab) < vocab_size and heap:
        negative, pair = heapq.heappop(heap)
        current = pair_counts.get(pair, 0)
        if -negative != current:
            continue  # stale entry
        if current < 2:
            break

        merges.append(pair)
        vocab.add(pair[0] + pair[1])
        touched: Set[Pair] = set()
        for index in sorted(pair_words.pop(pair, ())):
            before = _pairs(segments[index])
            segments[index] = _merge_pair(segments[index], pair)
            after = _pairs(segments[index])
            for old, count in before.items():
                pair_counts[old] -= count * frequency[index]
                touched.add(old)
            for new, count in after.items():
                pair_counts[new] += count * frequency[index]
                pair_words[new].add(index)
                touched.add(new)
        for changed in touched:
            count = pair_counts.get(changed, 0)
            if count <= 0:
                pair_counts.pop(changed, None)
                pair_words.pop(changed, None)
            elif changed != pair:
                heapq.heappush(heap, (-count, changed))
        pair_counts.pop(pair, None)

    model = BpeModel(alphabet, tuple(merges))
    logger.debug(
        "Trained BPE model",
        alphabet=len(alphabet),
        merges=len(merges),
        vocab_size=model.vocab_size,
        words=len(words),
    )
    return model
