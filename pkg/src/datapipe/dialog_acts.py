"""
Disfluency markup to disfluency tags.

Markup spans are ``{"kind", "repetition", "start", "end"}`` over word
indices. Spans may nest but not partially overlap; the innermost span
decides a word's tag.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, List, Sequence, Tuple

import orjson

from ..core.tags import DisfTag, ItnTag
from ..core.tagset import TagSet
from ..tagapply.apply import apply_tags
from ..utils.exceptions import MarkupError
from .generate import AlignedExample, case_tag, split_punctuation


class MarkupKind(str, Enum):
    REPARANDUM = "reparandum"
    REPAIR = "repair"
    FILLER = "filler"
    EDIT = "edit"


@dataclass(frozen=True)
class DisfluencySpan:
    kind: MarkupKind
    start: int
    end: int
    repetition: bool = False

    @classmethod
    def from_dict(cls, data: dict, index: int = 0) -> "DisfluencySpan":
        try:
            return cls(
                MarkupKind(data["kind"]),
                int(data["start"]),
                int(data["end"]),
                bool(data.get("repetition", False)),
            )
        except (KeyError, ValueError, TypeError) as e:
            raise MarkupError(f"malformed markup span {index}: {e}", {"span": index}) from e

    def tag(self) -> DisfTag:
        if self.kind == MarkupKind.REPARANDUM:
            return DisfTag.R_RT if self.repetition else DisfTag.R
        if self.kind == MarkupKind.REPAIR:
            return DisfTag.C_RT if self.repetition else DisfTag.C
        if self.kind == MarkupKind.FILLER:
            return DisfTag.F
        return DisfTag.D


def check_markup(length: int, spans: Sequence[DisfluencySpan]) -> None:
    """Raise MarkupError for out-of-range or partially overlapping spans."""
    for index, span in enumerate(spans):
        if not 0 <= span.start < span.end <= length:
            raise MarkupError(
                f"span {index} [{span.start}, {span.end}) outside utterance of {length} words",
                {"span": index, "start": span.start, "end": span.end},
            )
    for i, a in enumerate(spans):
        for j in range(i + 1, len(spans)):
            b = spans[j]
            disjoint = a.end <= b.start or b.end <= a.start
            nested = (a.start <= b.start and b.end <= a.end) or (b.start <= a.start and a.end <= b.end)
            if not (disjoint or nested):
                raise MarkupError(
                    f"spans {i} and {j} overlap without nesting",
                    {"span": i, "other": j, "start": b.start, "end": b.end},
                )


def map_dialog_acts(utterance: Sequence[str], spans: Sequence[DisfluencySpan]) -> List[DisfTag]:
    check_markup(len(utterance), spans)
    tags = [DisfTag.O] * len(utterance)
    # Wider spans first so nested spans overwrite them.
    for span in sorted(spans, key=lambda s: (-(s.end - s.start), s.start)):
        for position in range(span.start, span.end):
            tags[position] = span.tag()
    return tags


def parse_markup_line(line: str, line_number: int = 0) -> Tuple[List[str], List[DisfluencySpan]]:
    try:
        data = orjson.loads(line)
        words = [str(w) for w in data["words"]]
        raw_spans = data.get("spans", [])
    except (orjson.JSONDecodeError, KeyError, TypeError) as e:
        raise MarkupError(f"line {line_number}: bad markup record: {e}", {"line": line_number}) from e
    try:
        spans = [DisfluencySpan.from_dict(item, i) for i, item in enumerate(raw_spans)]
        check_markup(len(words), spans)
    except MarkupError as e:
        raise MarkupError(f"line {line_number}: {e.message}", {"line": line_number, **e.details}) from e
    return words, spans


def read_markup(lines: Iterable[str]) -> Iterator[Tuple[List[str], List[DisfluencySpan]]]:
    for line_number, line in enumerate(lines, start=1):
        if line.strip():
            yield parse_markup_line(line, line_number)


def markup_example(
    words: Sequence[str], spans: Sequence[DisfluencySpan], source_id: str = ""
) -> AlignedExample:
    """Conversational example: disfluency tags from markup, case and punctuation from the words.

    The written text is the gold tags applied to the spoken words, so it drops
    the disfluent words.
    """
    disf = map_dialog_acts(words, spans)
    spoken, punct, cap = [], [], []
    for word in words:
        base, mark = split_punctuation(word)
        spoken.append(base.lower())
        punct.append(mark)
        cap.append(case_tag(base))
    itn = (ItnTag.O,) * len(words)  # type: ignore[attr-defined]
    tags = TagSet(itn, tuple(punct), tuple(cap), tuple(disf))
    written = apply_tags(spoken, tags, None).text
    return AlignedExample(tuple(spoken), tags, source_id, written)
