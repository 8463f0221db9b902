"""
Word-level precision, recall and F1 per task and tag class.

A word counts as a true positive for class c when prediction and gold both
map to c, otherwise as a false positive for the predicted class and a false
negative for the gold class. O never counts. OVERALL is micro-averaged over
the non-O classes of a task.
"""

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from ..core.records import TaggedRecord
from ..core.tags import TASK_ORDER, CapTag, DisfTag, EntityType, PunctTag, Tag, Task
from ..core.tagset import TagSet
from ..utils.exceptions import ScoringError

OVERALL = "OVERALL"

# Capitalization buckets.
SINGLE_CASE = "Single-case"
UPPERCASE = "Uppercase"
CAPITAL = "Capital"

TASK_LABELS: Dict[Task, Tuple[str, ...]] = {
    Task.ITN: tuple(entity.value for entity in EntityType),
    Task.PUNCT: tuple(tag.value for tag in PunctTag if tag != PunctTag.O),
    Task.CAP: (SINGLE_CASE, UPPERCASE, CAPITAL),
    Task.DISF: tuple(tag.value for tag in DisfTag if tag != DisfTag.O),
}


def class_label(task: Task, tag: Tag, word: Optional[str] = None) -> Optional[str]:
    """Scoring class of one word's tag, or None for O.

    ITN classes are entity types with Begin and Cont merged. Capitalization
    is bucketed by the word's letter count; without a word, C counts as
    Capital and U as Uppercase.
    """
    if task == Task.ITN:
        return None if tag.entity is None else tag.entity.value
    if task == Task.CAP:
        if tag == CapTag.O:
            return None
        if word is not None and sum(1 for char in word if char.isalpha()) == 1:
            return SINGLE_CASE
        return UPPERCASE if tag == CapTag.U else CAPITAL
    return None if tag.value == "O" else tag.value


@dataclass(frozen=True)
class ClassScores:
    tp: int
    fp: int
    fn: int

    @property
    def precision(self) -> float:
        predicted = self.tp + self.fp
        return self.tp / predicted if predicted else 0.0

    @property
    def recall(self) -> float:
        return self.tp / self.support if self.support else 0.0

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        return 2 * p * r / (p + r) if p + r > 0 else 0.0

    @property
    def support(self) -> int:
        return self.tp + self.fn

    def to_dict(self) -> dict:
        return {
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "support": self.support,
            "tp": self.tp,
            "fp": self.fp,
            "fn": self.fn,
        }


@dataclass
class ConfusionCounts:
    """TP/FP/FN per task and class; merging is order-independent."""

    tp: Dict[Task, Counter] = field(default_factory=lambda: {task: Counter() for task in TASK_ORDER})
    fp: Dict[Task, Counter] = field(default_factory=lambda: {task: Counter() for task in TASK_ORDER})
    fn: Dict[Task, Counter] = field(default_factory=lambda: {task: Counter() for task in TASK_ORDER})

    def add_word(self, task: Task, predicted: Optional[str], gold: Optional[str]) -> None:
        if predicted is not None and predicted == gold:
            self.tp[task][gold] += 1
            return
        if predicted is not None:
            self.fp[task][predicted] += 1
        if gold is not None:
            self.fn[task][gold] += 1

    def add_record(
        self, pred: TagSet, gold: TagSet, words: Optional[Sequence[str]] = None, record: int = 0
    ) -> None:
        if len(pred) != len(gold) or (words is not None and len(words) != len(gold)):
            raise ScoringError(
                f"record {record}: {len(pred)} predicted tags for {len(gold)} gold tags",
                {"record": record, "pred": len(pred), "gold": len(gold)},
            )
        for task in TASK_ORDER:
            for position, (p, g) in enumerate(zip(pred.task(task), gold.task(task))):
                word = words[position] if words is not None else None
                self.add_word(task, class_label(task, p, word), class_label(task, g, word))

    def merge(self, other: "ConfusionCounts") -> "ConfusionCounts":
        merged = ConfusionCounts()
        for task in TASK_ORDER:
            merged.tp[task] = self.tp[task] + other.tp[task]
            merged.fp[task] = self.fp[task] + other.fp[task]
            merged.fn[task] = self.fn[task] + other.fn[task]
        return merged

    def scores(self, task: Task, label: str) -> ClassScores:
        return ClassScores(self.tp[task][label], self.fp[task][label], self.fn[task][label])

    def overall(self, task: Task) -> ClassScores:
        labels = TASK_LABELS[task]
        return ClassScores(
            sum(self.tp[task][label] for label in labels),
            sum(self.fp[task][label] for label in labels),
            sum(self.fn[task][label] for label in labels),
        )


@dataclass(frozen=True)
class TaskReport:
    classes: Dict[str, ClassScores]
    overall: ClassScores


@dataclass(frozen=True)
class EvalReport:
    """Per task: per-class scores plus the micro-averaged OVERALL."""

    tasks: Dict[Task, TaskReport]
    name: str = ""
    records: int = 0
    words: int = 0

    @classmethod
    def from_counts(
        cls, counts: ConfusionCounts, name: str = "", records: int = 0, words: int = 0
    ) -> "EvalReport":
        tasks = {
            task: TaskReport(
                {label: counts.scores(task, label) for label in TASK_LABELS[task]},
                counts.overall(task),
            )
            for task in TASK_ORDER
        }
        return cls(tasks, name, records, words)

    def f1(self, task: Task, label: str = OVERALL) -> float:
        report = self.tasks[Task(task)]
        return report.overall.f1 if label == OVERALL else report.classes[label].f1

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "records": self.records,
            "words": self.words,
            "tasks": {
                task.value: {
                    "classes": {label: s.to_dict() for label, s in report.classes.items()},
                    OVERALL: report.overall.to_dict(),
                }
                for task, report in self.tasks.items()
            },
        }


Scored = Union[TaggedRecord, TagSet]


def _unpack(item: Scored) -> Tuple[TagSet, Optional[Sequence[str]]]:
    if isinstance(item, TaggedRecord):
        return item.tags, item.words
    return item, None


def count_stream(
    pred: Iterable[Scored],
    gold: Iterable[Scored],
    words: Optional[Iterable[Sequence[str]]] = None,
) -> Tuple[ConfusionCounts, int, int]:
    counts = ConfusionCounts()
    pred_iter, gold_iter = iter(pred), iter(gold)
    word_iter = iter(words) if words is not None else None
    records = total_words = 0
    sentinel = object()
    while True:
        p = next(pred_iter, sentinel)
        g = next(gold_iter, sentinel)
        if p is sentinel and g is sentinel:
            break
        if p is sentinel or g is sentinel:
            missing = "prediction" if p is sentinel else "gold"
            raise ScoringError(
                f"record {records}: {missing} stream ended early",
                {"record": records, "missing": missing},
            )
        pred_tags, _ = _unpack(p)
        gold_tags, gold_words = _unpack(g)
        if word_iter is not None:
            gold_words = next(word_iter, None)
        counts.add_record(pred_tags, gold_tags, gold_words, records)
        records += 1
        total_words += len(gold_tags)
    return counts, records, total_words


def score(
    pred: Iterable[Scored],
    gold: Iterable[Scored],
    words: Optional[Iterable[Sequence[str]]] = None,
    name: str = "",
) -> EvalReport:
    """Score aligned prediction and gold streams record by record.

    Words for the capitalization buckets come from ``words`` when given,
    otherwise from gold TaggedRecords.
    """
    counts, records, total_words = count_stream(pred, gold, words)
    return EvalReport.from_counts(counts, name, records, total_words)


def merge_reports(counts: List[ConfusionCounts], name: str = "") -> EvalReport:
    merged = ConfusionCounts()
    for part in counts:
        merged = merged.merge(part)
    return EvalReport.from_counts(merged, name)
