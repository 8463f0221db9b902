"""
Word-level tags to token-level tags and back.

Capitalization and ITN attach to a word's first token, punctuation to its
last token; disfluency covers every token.
"""

from collections import Counter
from typing import List, Sequence, Tuple

from ..core.tags import CapTag, DisfTag, ItnTag, PunctTag
from ..core.tagset import TagSet
from ..utils.exceptions import LengthMismatchError

Boundaries = Sequence[Tuple[int, int]]


def _check_boundaries(boundaries: Boundaries) -> int:
    """Validate contiguous, ordered, covering ranges; return the token count."""
    expected = 0
    for word, (start, end) in enumerate(boundaries):
        if start != expected or end <= start:
            raise LengthMismatchError(
                f"token range {start}..{end} of word {word} is not contiguous and non-empty",
                {"word": word, "start": start, "end": end},
            )
        expected = end
    return expected


def project_tags(word_tags: TagSet, boundaries: Boundaries) -> TagSet:
    """Spread word-level tags over each word's tokens."""
    if len(word_tags) != len(boundaries):
        raise LengthMismatchError(
            f"{len(word_tags)} word tags for {len(boundaries)} words",
            {"tags": len(word_tags), "words": len(boundaries)},
        )
    _check_boundaries(boundaries)

    itn: List[ItnTag] = []
    punct: List[PunctTag] = []
    cap: List[CapTag] = []
    disf: List[DisfTag] = []
    for word, (start, end) in enumerate(boundaries):
        width = end - start
        itn_tag = word_tags.itn[word]
        itn.append(itn_tag)
        follow = ItnTag.O if itn_tag.entity is None else ItnTag.cont(itn_tag.entity)  # type: ignore[attr-defined]
        itn.extend([follow] * (width - 1))
        punct.extend([PunctTag.O] * (width - 1))
        punct.append(word_tags.punct[word])
        cap.extend([word_tags.cap[word]] * width)
        disf.extend([word_tags.disf[word]] * width)
    return TagSet(tuple(itn), tuple(punct), tuple(cap), tuple(disf))


def majority_tag(tags: Sequence[DisfTag]) -> DisfTag:
    """Most frequent tag; among tied tags the one seen first wins."""
    counts = Counter(tags)
    best = max(counts.values())
    for tag in tags:
        if counts[tag] == best:
            return tag
    raise ValueError("majority of an empty sequence")


def collapse_tags(token_tags: TagSet, boundaries: Boundaries) -> TagSet:
    """Reduce token-level tags to one tag per word."""
    total = _check_boundaries(boundaries)
    if len(token_tags) != total:
        raise LengthMismatchError(
            f"{len(token_tags)} token tags for {total} tokens",
            {"tags": len(token_tags), "tokens": total},
        )
    return TagSet(
        tuple(token_tags.itn[start] for start, _ in boundaries),
        tuple(token_tags.punct[end - 1] for _, end in boundaries),
        tuple(token_tags.cap[start] for start, _ in boundaries),
        tuple(majority_tag(token_tags.disf[start:end]) for start, end in boundaries),
    )
