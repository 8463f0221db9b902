"""
Training example generation from cleaned written text.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

from ..core.records import TaggedRecord
from ..core.tags import CapTag, DisfTag, ItnTag, PunctTag
from ..core.tagset import TagSet
from ..tagapply.apply import apply_tags
from ..utils.exceptions import RoundTripError
from ..wfst.grammar_set import GrammarSet
from ..wfst.normalize import normalize_with_alignment
from .clean import PUNCTUATION


@dataclass(frozen=True)
class AlignedExample:
    """Spoken words, their gold tags and the written text they came from."""

    spoken_words: Tuple[str, ...]
    tags: TagSet
    source_id: str
    written_text: str

    def to_record(self) -> TaggedRecord:
        return TaggedRecord(self.spoken_words, self.tags)

    def __len__(self) -> int:
        return len(self.spoken_words)


def split_punctuation(word: str) -> Tuple[str, PunctTag]:
    if len(word) > 1 and word[-1] in PUNCTUATION:
        return word[:-1], PunctTag.from_mark(word[-1])
    return word, PunctTag.O


def case_tag(word: str) -> CapTag:
    """U for multi-letter all-caps, C when the first letter is upper, else O."""
    letters = [char for char in word if char.isalpha()]
    if not letters:
        return CapTag.O
    if len(letters) > 1 and all(char.isupper() for char in letters):
        return CapTag.U
    if letters[0].isupper():
        return CapTag.C
    return CapTag.O


def derive_tags(
    written: str, grammars: GrammarSet, max_entity_words: int = 3
) -> Tuple[List[str], TagSet]:
    """Spoken words and gold tags for one written sentence."""
    bases: List[str] = []
    marks: List[PunctTag] = []
    for word in written.split():
        base, mark = split_punctuation(word)
        bases.append(base)
        marks.append(mark)
    boundaries = frozenset(i for i, mark in enumerate(marks) if mark != PunctTag.O)

    normalized = normalize_with_alignment(bases, grammars, max_entity_words, boundaries)
    entity_at = {a.written[0]: a for a in normalized.annotations}

    spoken: List[str] = []
    itn: List[ItnTag] = []
    punct: List[PunctTag] = []
    cap: List[CapTag] = []
    position = 0
    while position < len(bases):
        annotation = entity_at.get(position)
        if annotation is None:
            spoken.append(bases[position].lower())
            itn.append(ItnTag.O)  # type: ignore[attr-defined]
            punct.append(marks[position])
            cap.append(case_tag(bases[position]))
            position += 1
            continue
        start, end = annotation.spoken
        words = normalized.spoken[start:end]
        spoken.extend(words)
        itn.append(ItnTag.begin(annotation.entity_type))
        itn.extend(ItnTag.cont(annotation.entity_type) for _ in words[1:])
        punct.extend([PunctTag.O] * (len(words) - 1))
        punct.append(marks[annotation.written[1] - 1])
        cap.extend([CapTag.O] * len(words))
        position = annotation.written[1]

    disf = [DisfTag.O] * len(spoken)
    return spoken, TagSet(tuple(itn), tuple(punct), tuple(cap), tuple(disf))


def generate_example(
    written: str,
    grammars: GrammarSet,
    source_id: str = "",
    max_entity_words: int = 3,
) -> AlignedExample:
    """Build an AlignedExample and check that its gold tags reproduce ``written``.

    Raises RoundTripError when they do not; callers quarantine the record.
    """
    spoken, tags = derive_tags(written, grammars, max_entity_words)
    example = AlignedExample(tuple(spoken), tags, source_id, written)
    rebuilt = apply_tags(example.spoken_words, tags, grammars).text
    if rebuilt != written:
        raise RoundTripError(
            f"gold tags do not reproduce record {source_id or '<anonymous>'}",
            {"source_id": source_id, "expected": written, "rebuilt": rebuilt},
        )
    return example


def try_generate(
    written: str, grammars: GrammarSet, source_id: str = "", max_entity_words: int = 3
) -> Tuple[Optional[AlignedExample], Optional[dict]]:
    """(example, None) on success or (None, diagnostic) for quarantine."""
    try:
        return generate_example(written, grammars, source_id, max_entity_words), None
    except RoundTripError as e:
        return None, {"reason": "round_trip", "message": e.message, **e.details}
