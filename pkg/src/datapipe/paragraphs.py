"""
Paragraph formation for long-form evaluation sets.
"""

from typing import Iterable, Iterator, List

from ..core.tagset import TagSet
from .generate import AlignedExample


def join_examples(examples: List[AlignedExample]) -> AlignedExample:
    """Concatenate consecutive examples into one."""
    if len(examples) == 1:
        return examples[0]
    spoken: List[str] = []
    itn, punct, cap, disf = [], [], [], []
    for example in examples:
        spoken.extend(example.spoken_words)
        itn.extend(example.tags.itn)
        punct.extend(example.tags.punct)
        cap.extend(example.tags.cap)
        disf.extend(example.tags.disf)
    return AlignedExample(
        tuple(spoken),
        TagSet(tuple(itn), tuple(punct), tuple(cap), tuple(disf)),
        "+".join(example.source_id for example in examples),
        " ".join(example.written_text for example in examples),
    )


def form_paragraphs(examples: Iterable[AlignedExample], max_words: int) -> Iterator[AlignedExample]:
    """Greedily pack consecutive sentences into paragraphs of at most ``max_words``.

    Sentences are never split; one longer than ``max_words`` forms its own
    paragraph. ``max_words <= 0`` passes examples through unchanged.
    """
    if max_words <= 0:
        yield from examples
        return
    pending: List[AlignedExample] = []
    size = 0
    for example in examples:
        if pending and size + len(example) > max_words:
            yield join_examples(pending)
            pending, size = [], 0
        pending.append(example)
        size += len(example)
    if pending:
        yield join_examples(pending)
