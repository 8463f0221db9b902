"""
Written-to-spoken normalization that keeps entity alignment.
"""

import re
from typing import AbstractSet, List, NamedTuple, Optional, Sequence, Tuple

from ..core.tags import EntityType
from ..utils.exceptions import NoParse, SearchLimitError
from .grammar_set import ENTITY_PRIORITY, GrammarSet

_HAS_DIGIT = re.compile(r"[0-9]")


class EntityAnnotation(NamedTuple):
    """One verbalized entity: its type and spoken/written word ranges."""

    entity_type: EntityType
    spoken: Tuple[int, int]
    written: Tuple[int, int]


class NormalizedText(NamedTuple):
    spoken: Tuple[str, ...]
    annotations: Tuple[EntityAnnotation, ...]


def _verbalize(
    grammars: GrammarSet, entity: EntityType, span: Sequence[str], verify: bool
) -> Optional[Tuple[str, ...]]:
    if not grammars.could_be_written(entity, span):
        return None
    try:
        spoken = grammars.verbalize(entity, span).output
        if not spoken:
            return None
        if verify and grammars.format(entity, spoken).output != tuple(span):
            return None
    except (NoParse, SearchLimitError):
        return None
    return spoken


def normalize_with_alignment(
    written: Sequence[str],
    grammars: GrammarSet,
    max_entity_words: int = 3,
    boundaries: AbstractSet[int] = frozenset(),
    verify: bool = True,
) -> NormalizedText:
    """Replace written entities with their spoken form, left to right.

    At each position the longest run of up to ``max_entity_words`` words that
    some grammar verbalizes wins; equal lengths go to the first entity in
    ``ENTITY_PRIORITY``. A run never extends past a word listed in
    ``boundaries``. With ``verify`` a verbalization is accepted only if the
    spoken-to-written grammar maps it back to the same written words.
    """
    spoken: List[str] = []
    annotations: List[EntityAnnotation] = []
    position = 0
    n = len(written)
    while position < n:
        match = None
        if _HAS_DIGIT.search(written[position]):
            longest = 1
            while (
                longest < max_entity_words
                and position + longest < n
                and (position + longest - 1) not in boundaries
            ):
                longest += 1
            for length in range(longest, 0, -1):
                span = written[position : position + length]
                for entity in ENTITY_PRIORITY:
                    words = _verbalize(grammars, entity, span, verify)
                    if words is not None:
                        match = (entity, length, words)
                        break
                if match is not None:
                    break

        if match is None:
            spoken.append(written[position])
            position += 1
            continue

        entity, length, words = match
        start = len(spoken)
        spoken.extend(words)
        annotations.append(
            EntityAnnotation(entity, (start, len(spoken)), (position, position + length))
        )
        position += length

    return NormalizedText(tuple(spoken), tuple(annotations))
