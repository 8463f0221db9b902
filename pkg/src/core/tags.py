"""
Tag taxonomies for the four formatting tasks.

Every taxonomy puts O at class index 0; the tagger's argmax tie rule and the
evaluation harness both depend on that ordering.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple, Union

from ..utils.exceptions import TagDecodeError


class Task(str, Enum):
    """The four tag sequences predicted per position."""

    ITN = "itn"
    PUNCT = "punct"
    CAP = "cap"
    DISF = "disf"


TASK_ORDER: Tuple[Task, ...] = (Task.ITN, Task.PUNCT, Task.CAP, Task.DISF)


class EntityType(str, Enum):
    """ITN entity classes."""

    ALPHANUMERIC = "alphanumeric"
    NUMERIC = "numeric"
    ORDINAL = "ordinal"
    MONEY = "money"
    TIME = "time"


@dataclass(frozen=True)
class ItnTag:
    """O, Begin(entity) or Cont(entity).

    ``entity is None`` means O; ``continuation`` marks a non-initial span word.
    """

    entity: Optional[EntityType] = None
    continuation: bool = False

    def __post_init__(self):
        if self.entity is None and self.continuation:
            raise ValueError("O cannot be a continuation tag")

    @classmethod
    def begin(cls, entity: EntityType) -> "ItnTag":
        return cls(entity, False)

    @classmethod
    def cont(cls, entity: EntityType) -> "ItnTag":
        return cls(entity, True)

    @property
    def is_outside(self) -> bool:
        return self.entity is None

    @property
    def is_begin(self) -> bool:
        return self.entity is not None and not self.continuation

    @property
    def value(self) -> str:
        if self.entity is None:
            return "O"
        return ("_" if self.continuation else "") + self.entity.value

    def __str__(self) -> str:
        return self.value

    def __repr__(self) -> str:
        if self.entity is None:
            return "ItnTag.O"
        kind = "cont" if self.continuation else "begin"
        return f"ItnTag.{kind}({self.entity.name})"


ItnTag.O = ItnTag()  # type: ignore[attr-defined]


class PunctTag(str, Enum):
    O = "O"
    COMMA = "comma"
    PERIOD = "period"
    QUESTION_MARK = "question_mark"

    @property
    def mark(self) -> str:
        return _PUNCT_MARKS[self]

    @classmethod
    def from_mark(cls, mark: str) -> "PunctTag":
        for tag, char in _PUNCT_MARKS.items():
            if char and char == mark:
                return tag
        raise TagDecodeError(f"no punctuation tag for {mark!r}", {"mark": mark})


_PUNCT_MARKS = {
    PunctTag.O: "",
    PunctTag.COMMA: ",",
    PunctTag.PERIOD: ".",
    PunctTag.QUESTION_MARK: "?",
}


class CapTag(str, Enum):
    O = "O"  # all lowercase
    C = "C"  # first letter capitalized
    U = "U"  # all uppercase


class DisfTag(str, Enum):
    O = "O"
    C_RT = "C_RT"
    R_RT = "R_RT"
    C = "C"
    R = "R"
    F = "F"
    D = "D"


Tag = Union[ItnTag, PunctTag, CapTag, DisfTag]

ITN_CLASSES: Tuple[ItnTag, ...] = (ItnTag.O,) + tuple(  # type: ignore[attr-defined]
    tag
    for entity in EntityType
    for tag in (ItnTag.begin(entity), ItnTag.cont(entity))
)

TASK_CLASSES: Dict[Task, Tuple[Tag, ...]] = {
    Task.ITN: ITN_CLASSES,
    Task.PUNCT: tuple(PunctTag),
    Task.CAP: tuple(CapTag),
    Task.DISF: tuple(DisfTag),
}

_DECODE: Dict[Task, Dict[str, Tag]] = {
    task: {tag.value: tag for tag in classes} for task, classes in TASK_CLASSES.items()
}
_INDEX: Dict[Task, Dict[Tag, int]] = {
    task: {tag: i for i, tag in enumerate(classes)} for task, classes in TASK_CLASSES.items()
}


def num_classes(task: Task) -> int:
    return len(TASK_CLASSES[task])


def class_index(task: Task, tag: Tag) -> int:
    return _INDEX[task][tag]


def tag_from_index(task: Task, index: int) -> Tag:
    return TASK_CLASSES[task][index]


def outside(task: Task) -> Tag:
    """The O tag of a task."""
    return TASK_CLASSES[task][0]


def decode_tag(token: str, task: Task, column: int = 0) -> Tag:
    try:
        return _DECODE[task][token]
    except KeyError:
        raise TagDecodeError(
            f"unknown {task.value} tag {token!r} at column {column}",
            {"token": token, "column": column, "task": task.value},
        ) from None


def parse_tag_line(line: str, task: Union[Task, str]) -> List[Tag]:
    """Decode whitespace-separated serialized tags for one task."""
    task = Task(task)
    return [decode_tag(token, task, column) for column, token in enumerate(line.split())]


def serialize_tag_line(tags: Sequence[Tag]) -> str:
    """Inverse of :func:`parse_tag_line`."""
    return " ".join(tag.value for tag in tags)
