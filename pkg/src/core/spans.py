"""
ITN entity span extraction.
"""

from dataclasses import dataclass
from typing import List, Sequence

from ..utils.exceptions import WellFormednessError
from .tags import EntityType, ItnTag


@dataclass(frozen=True)
class EntitySpan:
    """Maximal run ``[start, end)`` of positions tagged as one entity."""

    entity_type: EntityType
    start: int
    end: int

    def __post_init__(self):
        if self.start >= self.end:
            raise ValueError(f"empty span [{self.start}, {self.end})")

    def __len__(self) -> int:
        return self.end - self.start

    def positions(self) -> range:
        return range(self.start, self.end)

    def to_dict(self) -> dict:
        return {"entity": self.entity_type.value, "start": self.start, "end": self.end}


def extract_itn_spans(itn: Sequence[ItnTag]) -> List[EntitySpan]:
    """Split an ITN sequence into spans; every Begin opens a new one."""
    spans: List[EntitySpan] = []
    start = None
    current = None
    for position, tag in enumerate(itn):
        if tag.entity is None:
            if current is not None:
                spans.append(EntitySpan(current, start, position))
                current = None
            continue
        if tag.continuation:
            if current is None:
                raise WellFormednessError(
                    f"orphan continuation at {position}", {"position": position}
                )
            if tag.entity != current:
                raise WellFormednessError(
                    f"continuation type mismatch at {position}",
                    {"position": position, "expected": current.value, "found": tag.entity.value},
                )
            continue
        if current is not None:
            spans.append(EntitySpan(current, start, position))
        current, start = tag.entity, position
    if current is not None:
        spans.append(EntitySpan(current, start, len(itn)))
    return spans


def spans_to_itn(spans: Sequence[EntitySpan], length: int) -> List[ItnTag]:
    """Inverse of :func:`extract_itn_spans` for disjoint spans."""
    tags: List[ItnTag] = [ItnTag.O] * length  # type: ignore[attr-defined]
    for span in spans:
        tags[span.start] = ItnTag.begin(span.entity_type)
        for position in range(span.start + 1, span.end):
            tags[position] = ItnTag.cont(span.entity_type)
    return tags


def repair_itn(itn: Sequence[ItnTag]) -> List[ItnTag]:
    """Turn orphan or type-mismatched continuations into Begin tags."""
    repaired: List[ItnTag] = []
    previous = None
    for tag in itn:
        if tag.continuation and (previous is None or previous.entity != tag.entity):
            tag = ItnTag.begin(tag.entity)
        repaired.append(tag)
        previous = tag
    return repaired
