"""
Corpus statistics for prepared tag-column data.
"""

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, Union

from ..core.records import TaggedRecord
from ..core.spans import extract_itn_spans
from ..core.tags import TASK_CLASSES, TASK_ORDER, EntityType, Task
from .generate import AlignedExample

# Upper edges of the sentence-length buckets; the last bucket is open.
LENGTH_BUCKETS = (5, 10, 20, 40, 80)


def length_bucket(words: int) -> str:
    lower = 1
    for upper in LENGTH_BUCKETS:
        if words <= upper:
            return f"{lower}-{upper}"
        lower = upper + 1
    return f"{lower}+"


@dataclass
class CorpusStats:
    """Record, word, tag and entity counts over a record stream."""

    records: int = 0
    words: int = 0
    tags: Dict[Task, Counter] = field(default_factory=lambda: {task: Counter() for task in TASK_ORDER})
    entities: Counter = field(default_factory=Counter)
    lengths: Counter = field(default_factory=Counter)

    def add(self, record: Union[TaggedRecord, AlignedExample]) -> None:
        tags = record.tags
        self.records += 1
        self.words += len(tags)
        self.lengths[length_bucket(len(tags))] += 1
        for task in TASK_ORDER:
            self.tags[task].update(tag.value for tag in tags.task(task))
        for span in extract_itn_spans(tags.itn):
            self.entities[span.entity_type.value] += 1

    def merge(self, other: "CorpusStats") -> "CorpusStats":
        merged = CorpusStats(self.records + other.records, self.words + other.words)
        for task in TASK_ORDER:
            merged.tags[task] = self.tags[task] + other.tags[task]
        merged.entities = self.entities + other.entities
        merged.lengths = self.lengths + other.lengths
        return merged

    def percentages(self, task: Task) -> Dict[str, float]:
        """Share of each tag class over all words, in class order."""
        counts = self.tags[task]
        return {
            tag.value: (100.0 * counts[tag.value] / self.words if self.words else 0.0)
            for tag in TASK_CLASSES[task]
        }

    def to_dict(self) -> dict:
        return {
            "records": self.records,
            "words": self.words,
            "tags": {
                task.value: {tag.value: self.tags[task][tag.value] for tag in TASK_CLASSES[task]}
                for task in TASK_ORDER
            },
            "entities": {entity.value: self.entities[entity.value] for entity in EntityType},
            "lengths": {bucket: self.lengths[bucket] for bucket in _bucket_names() if self.lengths[bucket]},
        }


def _bucket_names():
    lower = 1
    for upper in LENGTH_BUCKETS:
        yield f"{lower}-{upper}"
        lower = upper + 1
    yield f"{lower}+"


def corpus_stats(records: Iterable[Union[TaggedRecord, AlignedExample]]) -> CorpusStats:
    stats = CorpusStats()
    for record in records:
        stats.add(record)
    return stats
