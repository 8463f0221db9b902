"""
TagSet: four parallel tag sequences for one sentence, plus validation.
"""

from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from .tags import CapTag, DisfTag, ItnTag, PunctTag, Tag, Task


@dataclass(frozen=True)
class TagSet:
    """One tag per position for each of the four tasks."""

    itn: Tuple[ItnTag, ...]
    punct: Tuple[PunctTag, ...]
    cap: Tuple[CapTag, ...]
    disf: Tuple[DisfTag, ...]

    def __post_init__(self):
        # Accept any sequence, store tuples.
        for name in ("itn", "punct", "cap", "disf"):
            value = getattr(self, name)
            if not isinstance(value, tuple):
                object.__setattr__(self, name, tuple(value))

    @classmethod
    def empty(cls, length: int) -> "TagSet":
        """All-O tag set of the given length."""
        return cls(
            (ItnTag.O,) * length,  # type: ignore[attr-defined]
            (PunctTag.O,) * length,
            (CapTag.O,) * length,
            (DisfTag.O,) * length,
        )

    @classmethod
    def from_tasks(cls, sequences: Dict[Task, Sequence[Tag]]) -> "TagSet":
        return cls(
            tuple(sequences[Task.ITN]),
            tuple(sequences[Task.PUNCT]),
            tuple(sequences[Task.CAP]),
            tuple(sequences[Task.DISF]),
        )

    def task(self, task: Task) -> Tuple[Tag, ...]:
        return getattr(self, task.value)

    def replace(self, task: Task, tags: Sequence[Tag]) -> "TagSet":
        sequences = {t: self.task(t) for t in Task}
        sequences[task] = tuple(tags)
        return TagSet.from_tasks(sequences)

    def slice(self, start: int, end: int) -> "TagSet":
        return TagSet(
            self.itn[start:end], self.punct[start:end], self.cap[start:end], self.disf[start:end]
        )

    def __len__(self) -> int:
        return len(self.itn)


@dataclass(frozen=True)
class ValidationResult:
    """Outcome of :func:`validate_tagset`; ``ok`` or the first violation."""

    ok: bool
    message: str = ""
    position: Optional[int] = None

    def __bool__(self) -> bool:
        return self.ok


def check_itn(itn: Sequence[ItnTag]) -> ValidationResult:
    """Every continuation must follow a tag of the same entity type."""
    previous: Optional[ItnTag] = None
    for position, tag in enumerate(itn):
        if tag.continuation:
            if previous is None or previous.entity is None:
                return ValidationResult(False, f"orphan continuation at {position}", position)
            if previous.entity != tag.entity:
                return ValidationResult(
                    False, f"continuation type mismatch at {position}", position
                )
        previous = tag
    return ValidationResult(True)


def validate_tagset(tags: TagSet) -> ValidationResult:
    """Check equal lengths and ITN well-formedness; report the first violation."""
    lengths = {task: len(tags.task(task)) for task in Task}
    if len(set(lengths.values())) > 1:
        detail = ", ".join(f"{task.value}={n}" for task, n in lengths.items())
        return ValidationResult(False, f"length mismatch ({detail})", None)
    return check_itn(tags.itn)
