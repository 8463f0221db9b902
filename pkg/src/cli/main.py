"""
Command-line interface for the spoken-to-written formatter.

Data goes to stdout or the named output files; diagnostics, logs and
progress go to stderr. Exit codes: 0 on success, 1 on a pipeline error,
2 on invalid usage or configuration.
"""

import functools
import sys
from pathlib import Path
from typing import Iterator, List, Optional, Sequence, TextIO

import click
import orjson

from ..config.logging_config import get_logger, run_context, setup_logging
from ..config.settings import ensure_directories, get_settings
from ..core.records import TaggedRecord, format_record_line
from ..core.tags import Task
from ..core.tagset import TagSet
from ..datapipe.pipeline import PrepareOptions, prepare_corpus, prepare_markup
from ..datapipe.readers import read_corpus
from ..datapipe.stats import corpus_stats
from ..datapipe.synth import iter_synthetic
from ..evaluation.report import render_report, write_json_report
from ..evaluation.scoring import score
from ..tagapply.batch import apply_records, write_outputs
from ..tagger.model import FORMAT_VERSION as MODEL_FORMAT_VERSION
from ..tagger.model import JointModel
from ..tagger.sources import FileTagSource, LinearTagger, TagSource, load_tags
from ..tagger.training import train
from ..tokenizer.bpe import FORMAT_VERSION as BPE_FORMAT_VERSION
from ..tokenizer.bpe import BpeModel, train_bpe
from ..utils.exceptions import ConfigurationError, FormatterError
from ..utils.metrics import get_metrics_collector
from ..wfst.archive import VERSION as ARCHIVE_VERSION
from ..wfst.grammar_set import GrammarSet, load_grammars
from .config import RunConfig
from .progress import status, track

logger = get_logger("cli")

TASK_CHOICES = ["joint"] + [task.value for task in Task]


def _version_message() -> str:
    settings = get_settings()
    return (
        f"{settings.name} {settings.version} "
        f"(grammar archive v{ARCHIVE_VERSION}, tagger model v{MODEL_FORMAT_VERSION}, "
        f"bpe model v{BPE_FORMAT_VERSION})"
    )


def handle_errors(func):
    """Turn pipeline errors into a one-line diagnostic and exit code 1."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except FormatterError as e:
            logger.debug("Command failed", error=type(e).__name__, details=e.details)
            click.echo(f"error: {e.message}", err=True)
            sys.exit(1)
        except OSError as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(1)

    return wrapper


def _log_metrics() -> None:
    logger.event("metrics", **get_metrics_collector().snapshot())


@click.group()
@click.version_option(version=get_settings().version, message=_version_message())
@click.option("--log-level", default=None, help="DEBUG, INFO, WARNING, ERROR or CRITICAL.")
@click.option("--log-format", type=click.Choice(["structured", "json", "simple"]), default=None)
@click.pass_context
def cli(ctx: click.Context, log_level: Optional[str], log_format: Optional[str]):
    """Spoken-form transcript to written-form text."""
    if log_level is not None and log_level.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
        raise click.BadParameter(f"unknown log level {log_level!r}", param_hint="--log-level")
    setup_logging(level=log_level.upper() if log_level else None, fmt=log_format)
    ctx.with_resource(run_context())
    ctx.call_on_close(_log_metrics)


def _grammars(config: RunConfig) -> GrammarSet:
    with status("Loading grammars"):
        return load_grammars(config.grammar_dir, config.archive)


def _lines(path: Optional[Path]) -> Iterator[str]:
    if path is None:
        for line in sys.stdin:
            yield line.rstrip("\r\n")
        return
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            yield line.rstrip("\r\n")


def _out(path: Optional[str]) -> TextIO:
    if path is None:
        return sys.stdout
    ensure_directories(Path(path))
    return open(path, "w", encoding="utf-8")


def _close(handle: TextIO) -> None:
    if handle is not sys.stdout:
        handle.close()


# ---- grammars ---------------------------------------------------------


@cli.command("compile-grammars")
@click.argument("rule_dir")
@click.argument("out_path")
@handle_errors
def compile_grammars(rule_dir: str, out_path: str):
    """Compile a rule directory into a grammar archive."""
    config = RunConfig.build(grammar_dir=rule_dir)
    with status("Compiling grammars"):
        grammars = GrammarSet.from_directory(config.grammar_dir)
    ensure_directories(Path(out_path))
    grammars.save(out_path)
    stats = grammars.stats()
    logger.info("Wrote grammar archive", path=out_path, entries=len(stats))
    click.echo(f"compiled {len(stats)} grammars into {out_path}", err=True)


# ---- data -------------------------------------------------------------


@cli.command()
@click.argument("corpus")
@click.argument("out_prefix")
@click.option("--seed", type=int, default=None)
@click.option("--jobs", type=int, default=None)
@click.option("--grammar-dir", default=None)
@click.option("--archive", default=None)
@click.option("--paragraph-words", type=int, default=None, help="Pack sentences into paragraphs.")
@click.option("--entities-only", is_flag=True, help="Keep only records with an ITN span.")
@click.option("--markup", is_flag=True, help="CORPUS is disfluency markup; write train/dev/test.")
@handle_errors
def prepare(corpus, out_prefix, seed, jobs, grammar_dir, archive, paragraph_words, entities_only, markup):
    """Generate tag-column training data from a written-form corpus."""
    config = RunConfig.build(
        inputs=[corpus], seed=seed, jobs=jobs, grammar_dir=grammar_dir, archive=archive
    )
    if markup:
        summary = prepare_markup(_lines(config.inputs[0]), out_prefix, seed=config.seed)
    else:
        options = PrepareOptions.from_settings(
            seed=config.seed,
            jobs=config.jobs,
            max_entity_words=config.max_entity_words,
            paragraph_words=paragraph_words,
            entities_only=entities_only,
        )
        grammars = _grammars(config) if config.jobs == 1 else None
        summary = prepare_corpus(
            track(read_corpus(config.inputs[0]), "Preparing"),
            out_prefix,
            options,
            grammars=grammars,
            grammar_dir=config.grammar_dir,
            archive_path=config.archive,
        )
    click.echo(
        f"read {summary.read}, kept {summary.kept}, rejected {summary.rejected}, "
        f"quarantined {summary.quarantined}",
        err=True,
    )


@cli.command()
@click.argument("n", type=int)
@click.option("--seed", type=int, default=None)
@click.option("--out", default=None, help="Output file (default stdout).")
@handle_errors
def synth(n: int, seed: Optional[int], out: Optional[str]):
    """Write N synthetic written-form sentences."""
    config = RunConfig.build(seed=seed)
    handle = _out(out)
    try:
        for sentence in iter_synthetic(n, config.seed):
            handle.write(sentence + "\n")
    finally:
        _close(handle)


@cli.command()
@click.argument("tags_file")
@handle_errors
def stats(tags_file: str):
    """Print corpus statistics of a tag-column file as JSON."""
    config = RunConfig.build(inputs=[tags_file])
    result = corpus_stats(load_tags(config.inputs[0]))
    sys.stdout.write(orjson.dumps(result.to_dict(), option=orjson.OPT_INDENT_2).decode() + "\n")


# ---- training and tagging ---------------------------------------------


def _bpe_for_training(path: Optional[str], records: Sequence[TaggedRecord], vocab_size: int) -> BpeModel:
    if path is not None and Path(path).exists():
        return BpeModel.load(path)
    with status("Training BPE"):
        bpe = train_bpe((record.words for record in records), vocab_size)
    if path is not None:
        ensure_directories(Path(path))
        bpe.save(path)
        logger.info("Wrote BPE model", path=path, vocab_size=bpe.vocab_size)
    return bpe


@cli.command("train")
@click.argument("train_file")
@click.option("--val", "val_file", default=None, help="Validation tag-column file.")
@click.option("--model", "model_path", required=True, help="Output model path.")
@click.option("--bpe", "bpe_path", default=None, help="BPE model; trained and written here if missing.")
@click.option("--task", type=click.Choice(TASK_CHOICES), default="joint", show_default=True)
@click.option("--log", "log_path", default=None, help="Per-epoch loss log (JSON lines).")
@click.option("--epochs", type=int, default=None)
@click.option("--learning-rate", type=float, default=None)
@click.option("--l2", type=float, default=None)
@click.option("--dropout", type=float, default=None)
@click.option("--feature-dim", type=int, default=None)
@click.option("--vocab-size", type=int, default=None)
@click.option("--seed", type=int, default=None)
@handle_errors
def train_command(
    train_file, val_file, model_path, bpe_path, task, log_path, epochs, learning_rate, l2, dropout,
    feature_dim, vocab_size, seed,
):
    """Train the joint tagger, or one head with --task."""
    config = RunConfig.build(
        inputs=[train_file] + ([val_file] if val_file else []),
        vocab_size=vocab_size,
        seed=seed,
        tagger_epochs=epochs,
        tagger_learning_rate=learning_rate,
        tagger_l2=l2,
        tagger_dropout=dropout,
        tagger_feature_dim=feature_dim,
        tagger_seed=seed,
    )
    records = list(load_tags(config.inputs[0]))
    validation = list(load_tags(config.inputs[1])) if val_file else None
    bpe = _bpe_for_training(bpe_path, records, config.vocab_size)

    tasks = list(Task) if task == "joint" else [Task(task)]
    with status("Training tagger"):
        model = train(records, bpe, tasks, config.tagger, validation)
    ensure_directories(Path(model_path))
    model.save(model_path)

    log_path = log_path or f"{model_path}.log.jsonl"
    with open(log_path, "wb") as handle:
        for entry in model.history:
            handle.write(orjson.dumps(entry) + b"\n")
    final = [entry for entry in model.history if entry["split"] == "train"][-1:]
    logger.info("Wrote tagger model", path=model_path, log=log_path)
    if final:
        click.echo(f"final training ce_joint {final[0]['ce_joint']:.4f}", err=True)


def _tag_source(config: RunConfig) -> TagSource:
    if config.tags is not None:
        return FileTagSource(config.tags)
    if config.tagger_model is None or config.bpe_model is None:
        raise ConfigurationError(
            "tagging needs --model and --bpe, or --tags", {"model": None, "bpe": None}
        )
    return LinearTagger(JointModel.load(config.tagger_model), BpeModel.load(config.bpe_model))


def _sentences(path: Optional[Path]) -> Iterator[List[str]]:
    for line in _lines(path):
        yield line.split()


@cli.command()
@click.argument("input_file", required=False)
@click.option("--model", "model_path", default=None)
@click.option("--bpe", "bpe_path", default=None)
@click.option("--out", default=None, help="Output tag-column file (default stdout).")
@handle_errors
def tag(input_file, model_path, bpe_path, out):
    """Predict tag-column records for spoken-form lines."""
    config = RunConfig.build(
        inputs=[input_file] if input_file else [], tagger_model=model_path, bpe_model=bpe_path
    )
    source = _tag_source(config)
    handle = _out(out)
    try:
        for words in track(_sentences(config.inputs[0] if config.inputs else None), "Tagging"):
            if not words:
                continue
            handle.write(format_record_line(TaggedRecord(tuple(words), source.tag(words))) + "\n")
    finally:
        _close(handle)


@cli.command()
@click.argument("tags_file")
@click.option("--report", default=None, help="JSON-lines side report of unparsed spans.")
@click.option("--jobs", type=int, default=None)
@click.option("--grammar-dir", default=None)
@click.option("--archive", default=None)
@click.option("--out", default=None)
@handle_errors
def apply(tags_file, report, jobs, grammar_dir, archive, out):
    """Apply tag-column records, writing one written-form line per record."""
    config = RunConfig.build(inputs=[tags_file], jobs=jobs, grammar_dir=grammar_dir, archive=archive)
    grammars = _grammars(config) if config.jobs == 1 else None
    outputs = apply_records(
        track(load_tags(config.inputs[0]), "Applying"),
        grammars,
        jobs=config.jobs,
        grammar_dir=config.grammar_dir,
        archive_path=config.archive,
    )
    handle = _out(out)
    try:
        written, unparsed = write_outputs(outputs, handle, report)
    finally:
        _close(handle)
    logger.info("Applied tags", records=written, unparsed=unparsed)


@cli.command()
@click.argument("input_file", required=False)
@click.option("--model", "model_path", default=None)
@click.option("--bpe", "bpe_path", default=None)
@click.option("--tags", "tags_path", default=None, help="Use these tags instead of a model.")
@click.option("--report", default=None, help="JSON-lines side report of unparsed spans.")
@click.option("--jobs", type=int, default=None)
@click.option("--grammar-dir", default=None)
@click.option("--archive", default=None)
@click.option("--out", default=None)
@handle_errors
def convert(input_file, model_path, bpe_path, tags_path, report, jobs, grammar_dir, archive, out):
    """Spoken-form lines to written-form lines: tag, then apply."""
    config = RunConfig.build(
        inputs=[input_file] if input_file else [],
        tagger_model=model_path,
        bpe_model=bpe_path,
        tags=tags_path,
        jobs=jobs,
        grammar_dir=grammar_dir,
        archive=archive,
    )
    source = _tag_source(config)
    grammars = _grammars(config) if config.jobs == 1 else None

    def tagged() -> Iterator[TaggedRecord]:
        for words in _sentences(config.inputs[0] if config.inputs else None):
            # Empty lines carry no tags and format to empty lines.
            tags = source.tag(words) if words else TagSet.empty(0)
            yield TaggedRecord(tuple(words), tags)

    outputs = apply_records(
        track(tagged(), "Converting"),
        grammars,
        jobs=config.jobs,
        grammar_dir=config.grammar_dir,
        archive_path=config.archive,
    )
    handle = _out(out)
    try:
        written, unparsed = write_outputs(outputs, handle, report)
    finally:
        _close(handle)
    logger.info("Converted", records=written, unparsed=unparsed)


# ---- evaluation -------------------------------------------------------


@cli.command("eval")
@click.argument("pred_file")
@click.argument("gold_file")
@click.option("--json", "json_path", default=None, help="Write the unrounded JSON report here.")
@click.option("--name", default=None, help="Row name (default: prediction file name).")
@handle_errors
def eval_command(pred_file, gold_file, json_path, name):
    """Score predicted tags against gold tags."""
    config = RunConfig.build(inputs=[pred_file, gold_file])
    pred_path, gold_path = config.inputs
    result = score(load_tags(pred_path), load_tags(gold_path), name=name or pred_path.name)
    sys.stdout.write(render_report(result))
    if json_path:
        ensure_directories(Path(json_path))
        write_json_report(json_path, result)


def main():
    cli(prog_name="spokenfmt")


if __name__ == "__main__":
    main()
