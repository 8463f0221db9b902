"""
Fixed-width result tables and the JSON report.
"""

from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import List, Sequence, Union

import orjson

from ..core.tags import TASK_ORDER, Task
from .scoring import OVERALL, TASK_LABELS, ClassScores, EvalReport

JSON_REPORT_VERSION = 1
_NAME_WIDTH = 12
_CELL_WIDTH = 11  # "PPP RRR FFF"
_SEPARATOR = "  "


def percent(value: float) -> int:
    """Percentage rounded half-up to an integer."""
    return int((Decimal(repr(float(value))) * 100).quantize(Decimal("1"), rounding=ROUND_HALF_UP))


def _cell(scores: ClassScores) -> str:
    return " ".join(
        f"{percent(v):>3}" for v in (scores.precision, scores.recall, scores.f1)
    )


def render_task(task: Task, reports: Sequence[EvalReport]) -> List[str]:
    labels = list(TASK_LABELS[task]) + [OVERALL]
    widths = [max(_CELL_WIDTH, len(label)) for label in labels]
    name_width = max([_NAME_WIDTH] + [len(report.name) for report in reports])

    def row(first: str, cells: List[str]) -> str:
        parts = [first.ljust(name_width)]
        parts.extend(cell.rjust(width) for cell, width in zip(cells, widths))
        return _SEPARATOR.join(parts).rstrip()

    lines = [
        row(task.value, [label.rjust(width) for label, width in zip(labels, widths)]),
        row("", ["  P   R  F1"] * len(labels)),
    ]
    for report in reports:
        entry = report.tasks[task]
        cells = [_cell(entry.classes[label]) for label in labels[:-1]]
        cells.append(_cell(entry.overall))
        lines.append(row(report.name, cells))
    return lines


def render_report(reports: Union[EvalReport, Sequence[EvalReport]]) -> str:
    """One block per task, one row per report, percentages rounded half-up."""
    if isinstance(reports, EvalReport):
        reports = [reports]
    blocks = ["\n".join(render_task(task, reports)) for task in TASK_ORDER]
    return "\n\n".join(blocks) + "\n"


def report_to_dict(reports: Union[EvalReport, Sequence[EvalReport]]) -> dict:
    if isinstance(reports, EvalReport):
        reports = [reports]
    return {
        "version": JSON_REPORT_VERSION,
        "metadata": {"averaging": "micro", "excluded": "O", "level": "word"},
        "rows": [report.to_dict() for report in reports],
    }


def write_json_report(path: Union[str, Path], reports: Union[EvalReport, Sequence[EvalReport]]) -> None:
    Path(path).write_bytes(
        orjson.dumps(report_to_dict(reports), option=orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS) + b"\n"
    )
