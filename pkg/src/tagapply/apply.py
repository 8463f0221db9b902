"""
Stage 2: turn spoken words plus word-level tags into written text.

Order of operations: ITN spans are formatted first, then disfluent units
are removed, then capitalization and punctuation are applied.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from ..config.logging_config import get_logger
from ..core.spans import EntitySpan, extract_itn_spans
from ..core.tags import CapTag, DisfTag, PunctTag
from ..core.tagset import TagSet, validate_tagset
from ..utils.exceptions import (
    ConfigurationError,
    LengthMismatchError,
    NoParse,
    SearchLimitError,
    WellFormednessError,
)
from ..utils.metrics import get_metrics_collector
from ..wfst.grammar_set import GrammarSet

logger = get_logger(__name__)

Range = Tuple[int, int]


@dataclass(frozen=True)
class FormattedOutput:
    """Written text plus its alignment back to the spoken input."""

    text: str
    words: Tuple[str, ...] = ()
    word_alignment: Tuple[Tuple[Range, Range], ...] = ()
    dropped: Tuple[int, ...] = ()
    unparsed_spans: Tuple[EntitySpan, ...] = ()

    def report(self) -> dict:
        return {
            "dropped": list(self.dropped),
            "unparsed_spans": [span.to_dict() for span in self.unparsed_spans],
        }


@dataclass
class _Unit:
    start: int
    end: int
    words: List[str]
    punct: PunctTag
    cap: CapTag
    disfluent: bool
    formatted: bool = False
    output_range: Range = field(default=(0, 0))


def merge_span_tags(
    span: EntitySpan, punct: Sequence[PunctTag], cap: Sequence[CapTag]
) -> Tuple[PunctTag, CapTag]:
    """The last punctuation tag and the first capitalization tag of a span."""
    if len(punct) != len(span) or len(cap) != len(span):
        raise LengthMismatchError(
            f"span of {len(span)} words with {len(punct)} punctuation and {len(cap)} case tags",
            {"span": span.to_dict(), "punct": len(punct), "cap": len(cap)},
        )
    if not punct:
        raise LengthMismatchError("cannot merge tags of an empty span", {"span": span.to_dict()})
    return punct[-1], cap[0]


def remove_disfluencies(words: Sequence[str], disf: Sequence[DisfTag]) -> List[str]:
    """Words whose disfluency tag is O, in order."""
    if len(words) != len(disf):
        raise LengthMismatchError(
            f"{len(words)} words but {len(disf)} disfluency tags",
            {"words": len(words), "tags": len(disf)},
        )
    return [word for word, tag in zip(words, disf) if tag == DisfTag.O]


def capitalize_first(word: str) -> str:
    """Uppercase the first alphabetic character."""
    for position, char in enumerate(word):
        if char.isalpha():
            return word[:position] + char.upper() + word[position + 1 :]
    return word


def apply_case(word: str, cap: CapTag) -> str:
    if cap == CapTag.U:
        return word.upper()
    if cap == CapTag.C:
        return capitalize_first(word)
    return word


def _word_unit(position: int, word: str, tags: TagSet) -> _Unit:
    return _Unit(
        start=position,
        end=position + 1,
        words=[word],
        punct=tags.punct[position],
        cap=tags.cap[position],
        disfluent=tags.disf[position] != DisfTag.O,
    )


def _check(words: Sequence[str], tags: TagSet) -> None:
    if len(words) != len(tags):
        raise LengthMismatchError(
            f"{len(words)} words but {len(tags)} tags", {"words": len(words), "tags": len(tags)}
        )
    result = validate_tagset(tags)
    if not result.ok:
        if result.position is None:
            raise LengthMismatchError(result.message, {})
        raise WellFormednessError(result.message, {"position": result.position})


def apply_tags(
    words: Sequence[str], tags: TagSet, grammars: Optional[GrammarSet]
) -> FormattedOutput:
    """Render ``words`` under ``tags``. ``grammars`` may be None when no ITN span is tagged."""
    _check(words, tags)
    metrics = get_metrics_collector()

    units: List[_Unit] = []
    unparsed: List[EntitySpan] = []
    position = 0
    for span in extract_itn_spans(tags.itn) + [None]:
        stop = span.start if span is not None else len(words)
        while position < stop:
            units.append(_word_unit(position, words[position], tags))
            position += 1
        if span is None:
            break

        spoken = list(words[span.start : span.end])
        if grammars is None:
            raise ConfigurationError(
                "ITN spans need a grammar set",
                {"entity": span.entity_type.value, "start": span.start},
            )
        try:
            written = grammars.format(span.entity_type, spoken).output
        except (NoParse, SearchLimitError) as e:
            logger.debug(
                "Span left unformatted",
                entity=span.entity_type.value,
                words=spoken,
                reason=e.message,
            )
            metrics.counter("noparse_spans", "ITN spans with no grammar parse").inc()
            unparsed.append(span)
            for index in span.positions():
                units.append(_word_unit(index, words[index], tags))
        else:
            punct, cap = merge_span_tags(
                span, tags.punct[span.start : span.end], tags.cap[span.start : span.end]
            )
            units.append(
                _Unit(
                    start=span.start,
                    end=span.end,
                    words=list(written),
                    punct=punct,
                    cap=cap,
                    # ITN wins: one fluent word keeps the whole span.
                    disfluent=all(tag != DisfTag.O for tag in tags.disf[span.start : span.end]),
                    formatted=True,
                )
            )
        position = span.end

    kept = [unit for unit in units if not unit.disfluent]
    dropped = tuple(i for unit in units if unit.disfluent for i in range(unit.start, unit.end))
    if kept and units[-1].disfluent:
        trailing: Optional[PunctTag] = None
        for unit in reversed(units):
            if not unit.disfluent:
                break
            if unit.punct != PunctTag.O:
                trailing = unit.punct
                break
        if trailing is not None:
            kept[-1].punct = trailing
    if dropped:
        metrics.counter("dropped_words", "Spoken words removed as disfluent").inc(len(dropped))

    output: List[str] = []
    alignment: List[Tuple[Range, Range]] = []
    for unit in kept:
        if unit.formatted:
            rendered = [w.upper() for w in unit.words] if unit.cap == CapTag.U else list(unit.words)
        else:
            rendered = [apply_case(unit.words[0], unit.cap)]
        if unit.punct != PunctTag.O:
            rendered[-1] += unit.punct.mark
        alignment.append(((unit.start, unit.end), (len(output), len(output) + len(rendered))))
        output.extend(rendered)

    return FormattedOutput(
        text=" ".join(output),
        words=tuple(output),
        word_alignment=tuple(alignment),
        dropped=dropped,
        unparsed_spans=tuple(unparsed),
    )
