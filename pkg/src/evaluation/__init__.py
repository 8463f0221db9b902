"""
Evaluation Module
Word-level precision/recall/F1 per task and class, rendered tables and JSON reports.
"""

from .report import percent, render_report, render_task, report_to_dict, write_json_report
from .scoring import (
    CAPITAL,
    OVERALL,
    SINGLE_CASE,
    TASK_LABELS,
    UPPERCASE,
    ClassScores,
    ConfusionCounts,
    EvalReport,
    TaskReport,
    class_label,
    count_stream,
    merge_reports,
    score,
)

__all__ = [
    "OVERALL",
    "SINGLE_CASE",
    "UPPERCASE",
    "CAPITAL",
    "TASK_LABELS",
    "class_label",
    "ClassScores",
    "ConfusionCounts",
    "TaskReport",
    "EvalReport",
    "count_stream",
    "score",
    "merge_reports",
    "percent",
    "render_task",
    "render_report",
    "report_to_dict",
    "write_json_report",
]
