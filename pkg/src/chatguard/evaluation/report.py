"""Fixed-width text reports and model ranking.

Layouts follow the comparison tables the pipeline is meant to print: one
grid of per-class precision/recall/F1 with a column per model, and one
Model/Accuracy table. Values display half-up-rounded to 2 decimals; stored
values keep full precision. Undefined metrics render as an em-dash. Output
is byte-stable for identical inputs.
"""

from __future__ import annotations

from decimal import ROUND_HALF_UP, Decimal

from chatguard.evaluation.metrics import EvalReport
from chatguard.labels import LABEL_ORDER

CLASS_DISPLAY = {0: "Non-toxic", 1: "Mild", 2: "Toxic"}
UNDEFINED = "—"  # em-dash

_METRIC_GROUPS = ("Precision", "Recall", "F1-score")


def format_metric(value: float | None) -> str:
    if value is None:
        return UNDEFINED
    return str(Decimal(repr(value)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def _metric_of(report: EvalReport, group: str, label) -> float | None:
    metrics = report.per_class[label]
    return {
        "Precision": metrics.precision,
        "Recall": metrics.recall,
        "F1-score": metrics.f1,
    }[group]


def render_metrics_table(reports: list[EvalReport]) -> str:
    """Per-class grid: rows are classes, column groups are metrics, one
    column per model inside each group."""
    names = [r.model_name for r in reports]
    width = max([len(n) for n in names] + [5])
    label_width = max(len("Classification"), *(len(v) for v in CLASS_DISPLAY.values()))

    def group_cells(fill: str) -> list[str]:
        return [fill.ljust(width) for _ in names]

    header_top = "Classification".ljust(label_width)
    header_models = " " * label_width
    for group in _METRIC_GROUPS:
        group_width = width * len(names) + 2 * (len(names) - 1)
        header_top += " | " + group.ljust(group_width)
        header_models += " | " + "  ".join(n.ljust(width) for n in names)
    lines = [header_top.rstrip(), header_models.rstrip()]
    lines.append("-" * max(len(line) for line in lines))

    for index, label in enumerate(LABEL_ORDER):
        row = CLASS_DISPLAY[index].ljust(label_width)
        for group in _METRIC_GROUPS:
            cells = [
                format_metric(_metric_of(report, group, label)).rjust(width)
                for report in reports
            ]
            row += " | " + "  ".join(cells)
        lines.append(row.rstrip())
    return "\n".join(lines)


def render_accuracy_table(reports: list[EvalReport]) -> str:
    name_width = max(len("Model"), *(len(r.model_name) for r in reports))
    lines = [f"{'Model'.ljust(name_width)}  Accuracy"]
    lines.append("-" * len(lines[0]))
    for report in reports:
        lines.append(
            f"{report.model_name.ljust(name_width)}  {format_metric(report.accuracy).rjust(8)}"
        )
    return "\n".join(lines)


def render_normalized_matrix(report: EvalReport) -> str:
    if report.normalized is None:
        return ""
    label_width = max(len(v) for v in CLASS_DISPLAY.values())
    header = " " * label_width + "  " + "  ".join(
        CLASS_DISPLAY[i].rjust(label_width) for i in range(3)
    )
    lines = [f"{report.model_name} — normalized confusion matrix", header]
    for i in range(3):
        cells = "  ".join(
            format_metric(report.normalized[i][j]).rjust(label_width) for j in range(3)
        )
        flag = "  (empty)" if report.zero_rows[i] else ""
        lines.append(f"{CLASS_DISPLAY[i].ljust(label_width)}  {cells}{flag}")
    return "\n".join(lines)


def render_report(reports: list[EvalReport], include_matrices: bool = False) -> str:
    """The full text report: metrics grid plus the accuracy table."""
    if not reports:
        raise ValueError("need at least one report")
    parts = [render_metrics_table(reports), "", render_accuracy_table(reports)]
    if include_matrices:
        for report in reports:
            block = render_normalized_matrix(report)
            if block:
                parts.extend(["", block])
    return "\n".join(parts) + "\n"


def compare_models(reports: list[EvalReport]) -> list[EvalReport]:
    """Rank descending by accuracy, then macro-F1, then name."""
    if len(reports) < 2:
        raise ValueError("ranking needs at least two reports")

    def key(report: EvalReport):
        acc = -1.0 if report.accuracy is None else report.accuracy
        macro = -1.0 if report.macro_f1 is None else report.macro_f1
        return (-acc, -macro, report.model_name)

    return sorted(reports, key=key)
