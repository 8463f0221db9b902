"""
Tag sources: where Stage 2 gets its word-level tags from.
"""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence, Union

from ..config.logging_config import get_logger
from ..core.records import TaggedRecord, read_records
from ..core.tagset import TagSet
from ..tokenizer.bpe import BpeModel
from ..utils.exceptions import LengthMismatchError, TagFormatError
from .model import JointModel
from .predict import predict


def load_tags(path: Union[str, Path]) -> Iterator[TaggedRecord]:
    """Stream validated records from a tag-column file.

    Malformed records raise TagFormatError carrying their line number.
    """
    try:
        handle = open(path, "r", encoding="utf-8")
    except OSError as e:
        raise TagFormatError(f"cannot read tag file {path}: {e}", {"path": str(path)}) from e
    with handle:
        yield from read_records(handle)


class TagSource(ABC):
    """Produces one word-level TagSet per input sentence."""

    def __init__(self):
        self.logger = get_logger(self.__class__.__name__)

    @abstractmethod
    def tag(self, words: Sequence[str]) -> TagSet:
        pass

    def tag_all(self, sentences: Iterable[Sequence[str]]) -> Iterator[TagSet]:
        for words in sentences:
            yield self.tag(words)


class LinearTagger(TagSource):
    """Predictions of a trained JointModel."""

    def __init__(self, model: JointModel, bpe: BpeModel):
        super().__init__()
        self.model = model
        self.bpe = bpe

    @classmethod
    def from_files(cls, model_path: Union[str, Path], bpe_path: Union[str, Path]) -> "LinearTagger":
        return cls(JointModel.load(model_path), BpeModel.load(bpe_path))

    def tag(self, words: Sequence[str]) -> TagSet:
        return predict(words, self.model, self.bpe)


class FileTagSource(TagSource):
    """Precomputed tags read from a tag-column file, one record per sentence in order."""

    def __init__(self, path: Union[str, Path]):
        super().__init__()
        self.path = Path(path)
        self._records: Optional[Iterator[TaggedRecord]] = None
        self._index = 0

    def _next_record(self) -> TaggedRecord:
        if self._records is None:
            self._records = load_tags(self.path)
        try:
            record = next(self._records)
        except StopIteration:
            raise TagFormatError(
                f"tag file {self.path} ran out of records at sentence {self._index}",
                {"path": str(self.path), "record": self._index},
            ) from None
        self._index += 1
        return record

    def tag(self, words: Sequence[str]) -> TagSet:
        record = self._next_record()
        if len(record.words) != len(words):
            raise LengthMismatchError(
                f"sentence {self._index - 1} has {len(words)} words but its tag record has "
                f"{len(record.words)}",
                {"record": self._index - 1, "words": len(words), "tags": len(record.words)},
            )
        if tuple(record.words) != tuple(words):
            self.logger.debug("Tag record words differ from input", record=self._index - 1)
        return record.tags
