"""
Batch tag application over tag-column records.
"""

from pathlib import Path
from typing import Iterable, Iterator, Optional, TextIO, Tuple, Union

import orjson

from ..config.logging_config import get_logger
from ..core.records import TaggedRecord
from ..utils.metrics import get_metrics_collector
from ..utils.parallel import ordered_map
from ..wfst.grammar_set import GrammarSet, load_grammars
from .apply import FormattedOutput, apply_tags

logger = get_logger(__name__)

_worker_grammars: Optional[GrammarSet] = None


def _init_worker(grammar_dir: Optional[str], archive_path: Optional[str]) -> None:
    global _worker_grammars
    _worker_grammars = load_grammars(grammar_dir, archive_path)


def _apply_record(record: TaggedRecord) -> FormattedOutput:
    return apply_tags(record.words, record.tags, _worker_grammars)


def apply_records(
    records: Iterable[TaggedRecord],
    grammars: Optional[GrammarSet] = None,
    jobs: int = 1,
    grammar_dir: Optional[Union[str, Path]] = None,
    archive_path: Optional[Union[str, Path]] = None,
) -> Iterator[FormattedOutput]:
    """Apply tags record by record; output order matches input order.

    With ``jobs > 1`` each worker loads its own GrammarSet from
    ``grammar_dir``/``archive_path``.
    """
    if jobs <= 1:
        if grammars is None:
            grammars = load_grammars(grammar_dir, archive_path)
        for record in records:
            yield apply_tags(record.words, record.tags, grammars)
        return

    initargs = (
        str(grammar_dir) if grammar_dir is not None else None,
        str(archive_path) if archive_path is not None else None,
    )
    # Worker counters stay in the worker processes; recount them here.
    metrics = get_metrics_collector()
    for output in ordered_map(
        _apply_record, records, jobs=jobs, initializer=_init_worker, initargs=initargs
    ):
        if output.unparsed_spans:
            metrics.counter("noparse_spans", "ITN spans with no grammar parse").inc(
                len(output.unparsed_spans)
            )
        if output.dropped:
            metrics.counter("dropped_words", "Spoken words removed as disfluent").inc(
                len(output.dropped)
            )
        yield output


def report_line(index: int, output: FormattedOutput) -> bytes:
    """One JSON-lines report record."""
    return orjson.dumps({"record": index, **output.report()}) + b"\n"


def write_outputs(
    outputs: Iterable[FormattedOutput],
    out: TextIO,
    report: Optional[Union[str, Path]] = None,
) -> Tuple[int, int]:
    """Write written-form lines and the optional side report.

    Returns (records written, records with unparsed spans).
    """
    written = unparsed = 0
    handle = open(report, "wb") if report is not None else None
    try:
        for index, output in enumerate(outputs):
            out.write(output.text + "\n")
            written += 1
            if output.unparsed_spans:
                unparsed += 1
            if handle is not None:
                handle.write(report_line(index, output))
    finally:
        if handle is not None:
            handle.close()
    logger.debug("Wrote formatted records", records=written, unparsed=unparsed)
    return written, unparsed
