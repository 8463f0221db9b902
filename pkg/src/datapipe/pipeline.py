"""
Corpus preparation: clean, generate, quarantine, split, write.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, List, Optional, Tuple, Union

import orjson

from ..config.logging_config import get_logger
from ..config.settings import ensure_directories, get_settings
from ..core.records import format_record_line
from ..utils.exceptions import EmptyCorpusError
from ..utils.metrics import get_metrics_collector, track_execution_time
from ..utils.parallel import ordered_map
from ..wfst.grammar_set import GrammarSet, load_grammars
from .clean import clean_with_reason
from .dialog_acts import markup_example, read_markup
from .filters import require_entities as keep_entity_records
from .generate import AlignedExample, try_generate
from .paragraphs import form_paragraphs
from .readers import CorpusRecord
from .split import split_dataset, split_three_way
from .stats import corpus_stats

logger = get_logger(__name__)

MANIFEST_VERSION = 1


@dataclass(frozen=True)
class PrepareOptions:
    seed: int = 13
    min_words: int = 4
    max_entity_words: int = 3
    validation_fraction: float = 0.10
    validation_cap: int = 50_000
    paragraph_words: int = 0
    entities_only: bool = False
    jobs: int = 1

    @classmethod
    def from_settings(cls, **overrides) -> "PrepareOptions":
        settings = get_settings()
        values = dict(
            seed=settings.data.seed,
            min_words=settings.data.min_words,
            max_entity_words=settings.grammar.max_entity_words,
            validation_fraction=settings.data.validation_fraction,
            validation_cap=settings.data.validation_cap,
            paragraph_words=settings.data.paragraph_words,
        )
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


@dataclass
class PrepareSummary:
    read: int = 0
    rejected: int = 0
    quarantined: int = 0
    kept: int = 0
    outputs: dict = field(default_factory=dict)
    manifest: dict = field(default_factory=dict)


def output_paths(prefix: Union[str, Path], parts: Iterable[str]) -> dict:
    prefix = str(prefix)
    paths = {part: Path(f"{prefix}.{part}.tsv") for part in parts}
    paths["quarantine"] = Path(f"{prefix}.quarantine.jsonl")
    paths["manifest"] = Path(f"{prefix}.manifest.json")
    return paths


# Worker-global state, set once per process by _init_worker.
_worker_grammars: Optional[GrammarSet] = None
_worker_options: Optional[PrepareOptions] = None


def _init_worker(grammar_dir, archive_path, options: PrepareOptions, grammars=None) -> None:
    global _worker_grammars, _worker_options
    _worker_grammars = grammars if grammars is not None else load_grammars(grammar_dir, archive_path)
    _worker_options = options


def _process(record: CorpusRecord) -> Tuple[CorpusRecord, Optional[AlignedExample], Optional[dict]]:
    cleaned = clean_with_reason(record.text, _worker_options.min_words)
    if not cleaned.kept:
        return record, None, {"reason": "rejected", "message": cleaned.reason}
    example, diagnostic = try_generate(
        cleaned.text, _worker_grammars, record.source_id, _worker_options.max_entity_words
    )
    return record, example, diagnostic


def _write_records(path: Path, examples: Iterable[AlignedExample]) -> int:
    count = 0
    with open(path, "w", encoding="utf-8") as handle:
        for example in examples:
            handle.write(format_record_line(example.to_record()) + "\n")
            count += 1
    return count


def _write_manifest(path: Path, manifest: dict) -> None:
    path.write_bytes(orjson.dumps(manifest, option=orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS) + b"\n")


@track_execution_time("prepare_corpus")
def prepare_corpus(
    records: Iterable[CorpusRecord],
    out_prefix: Union[str, Path],
    options: Optional[PrepareOptions] = None,
    grammars: Optional[GrammarSet] = None,
    grammar_dir: Optional[Union[str, Path]] = None,
    archive_path: Optional[Union[str, Path]] = None,
) -> PrepareSummary:
    """Turn a written-form corpus into train and validation tag-column files.

    Writes ``<prefix>.train.tsv``, ``<prefix>.val.tsv``,
    ``<prefix>.quarantine.jsonl`` and ``<prefix>.manifest.json``. Records the
    cleaner rejects are counted; records whose gold tags do not reproduce
    their text go to the quarantine file with a diagnostic.
    """
    options = options or PrepareOptions.from_settings()
    metrics = get_metrics_collector()
    paths = output_paths(out_prefix, ("train", "val"))
    ensure_directories(*paths.values())

    summary = PrepareSummary()
    examples: List[AlignedExample] = []
    if options.jobs > 1:
        initargs = (
            str(grammar_dir) if grammar_dir is not None else None,
            str(archive_path) if archive_path is not None else None,
            options,
        )
    else:
        initargs = (grammar_dir, archive_path, options, grammars)
    with open(paths["quarantine"], "wb") as quarantine:
        for record, example, diagnostic in ordered_map(
            _process, records, jobs=options.jobs, initializer=_init_worker, initargs=initargs
        ):
            summary.read += 1
            if example is not None:
                examples.append(example)
                continue
            if diagnostic["reason"] == "rejected":
                summary.rejected += 1
                metrics.counter("records_rejected", "Records the cleaner rejected").inc()
                continue
            summary.quarantined += 1
            metrics.counter("records_quarantined", "Records failing the gold round trip").inc()
            logger.event("quarantine", **{**diagnostic, "source_id": record.source_id})
            quarantine.write(orjson.dumps({"id": record.source_id, "text": record.text, **diagnostic}) + b"\n")

    if summary.read == 0:
        raise EmptyCorpusError("corpus contains no records", {"prefix": str(out_prefix)})

    if options.entities_only:
        examples = list(keep_entity_records(examples))
    examples = list(form_paragraphs(examples, options.paragraph_words))
    summary.kept = len(examples)
    metrics.counter("records_kept", "Records written to train or validation").inc(summary.kept)

    train, validation = split_dataset(
        examples, options.seed, options.validation_fraction, options.validation_cap
    )
    _write_records(paths["train"], train)
    _write_records(paths["val"], validation)

    summary.manifest = {
        "version": MANIFEST_VERSION,
        "seed": options.seed,
        "records": {
            "read": summary.read,
            "rejected": summary.rejected,
            "quarantined": summary.quarantined,
            "kept": summary.kept,
        },
        "files": {name: path.name for name, path in paths.items() if name != "manifest"},
        "splits": {
            "train": corpus_stats(train).to_dict(),
            "val": corpus_stats(validation).to_dict(),
        },
    }
    _write_manifest(paths["manifest"], summary.manifest)
    summary.outputs = paths
    logger.info(
        "Prepared corpus",
        read=summary.read,
        kept=summary.kept,
        rejected=summary.rejected,
        quarantined=summary.quarantined,
        train=len(train),
        val=len(validation),
    )
    return summary


@track_execution_time("prepare_markup")
def prepare_markup(
    lines: Iterable[str],
    out_prefix: Union[str, Path],
    seed: int = 13,
    fractions: Tuple[float, float, float] = (0.90, 0.07, 0.03),
) -> PrepareSummary:
    """Conversational markup to train/dev/test tag-column files."""
    paths = output_paths(out_prefix, ("train", "dev", "test"))
    ensure_directories(*paths.values())
    examples = [
        markup_example(words, spans, str(index))
        for index, (words, spans) in enumerate(read_markup(lines), start=1)
    ]
    if not examples:
        raise EmptyCorpusError("markup file contains no utterances", {"prefix": str(out_prefix)})

    parts = dict(zip(("train", "dev", "test"), split_three_way(examples, seed, fractions)))
    for name, part in parts.items():
        _write_records(paths[name], part)
    # Markup records are never quarantined; the file is written for a uniform layout.
    paths["quarantine"].write_bytes(b"")

    summary = PrepareSummary(read=len(examples), kept=len(examples), outputs=paths)
    summary.manifest = {
        "version": MANIFEST_VERSION,
        "seed": seed,
        "records": {"read": summary.read, "rejected": 0, "quarantined": 0, "kept": summary.kept},
        "files": {name: path.name for name, path in paths.items() if name != "manifest"},
        "splits": {name: corpus_stats(part).to_dict() for name, part in parts.items()},
    }
    _write_manifest(paths["manifest"], summary.manifest)
    logger.info("Prepared markup", **{name: len(part) for name, part in parts.items()})
    return summary
