"""Metric computation from gold labels and prediction files.

All metrics derive from a 3x3 confusion matrix with rows = gold class,
columns = predicted class, class order fixed [non-toxic, mild, toxic].
Zero denominators produce None (rendered as an em-dash in reports), never a
silent 0.0 — a fabricated zero would corrupt macro averages.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from chatguard.classify.interchange import Prediction
from chatguard.corpus.models import LabeledExample
from chatguard.errors import IncompleteLabelsError, PredictionMismatchError
from chatguard.labels import LABEL_ORDER, ToxicityLabel

F1_CONSISTENCY_TOL = 1e-12


@dataclass(frozen=True)
class ConfusionMatrix:
    """cells[gold][predicted] counts, in LABEL_ORDER."""

    cells: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        if len(self.cells) != 3 or any(len(row) != 3 for row in self.cells):
            raise ValueError("confusion matrix must be 3x3")
        if any(cell < 0 for row in self.cells for cell in row):
            raise ValueError("confusion matrix counts must be >= 0")

    @classmethod
    def from_rows(cls, rows: list[list[int]]) -> "ConfusionMatrix":
        return cls(tuple(tuple(row) for row in rows))

    @property
    def total(self) -> int:
        return sum(cell for row in self.cells for cell in row)

    def row(self, label: ToxicityLabel) -> tuple[int, int, int]:
        return self.cells[int(label)]

    def column(self, label: ToxicityLabel) -> tuple[int, int, int]:
        return tuple(self.cells[g][int(label)] for g in range(3))


@dataclass(frozen=True)
class ClassMetrics:
    """Precision/recall/F1 for one class; None marks a 0/0 denominator."""

    precision: float | None
    recall: float | None
    f1: float | None


def confusion_matrix(
    gold: list[LabeledExample], predictions: list[Prediction]
) -> ConfusionMatrix:
    """Count (gold, predicted) pairs. Prediction ids must exactly cover the
    gold ids — no missing, no extra, no duplicates."""
    unlabeled = [e.id for e in gold if e.label is None]
    if unlabeled:
        raise IncompleteLabelsError(unlabeled)
    gold_by_id = {e.id: e.label for e in gold}
    if len(gold_by_id) != len(gold):
        seen: set[str] = set()
        dupes = [e.id for e in gold if e.id in seen or seen.add(e.id)]
        raise PredictionMismatchError([], [], dupes)

    pred_ids: set[str] = set()
    duplicates = []
    for pred in predictions:
        if pred.example_id in pred_ids:
            duplicates.append(pred.example_id)
        pred_ids.add(pred.example_id)
    missing = sorted(set(gold_by_id) - pred_ids)
    extra = sorted(pred_ids - set(gold_by_id))
    if missing or extra or duplicates:
        raise PredictionMismatchError(missing, extra, duplicates)

    rows = [[0, 0, 0], [0, 0, 0], [0, 0, 0]]
    for pred in predictions:
        g = int(gold_by_id[pred.example_id])
        p = int(pred.predicted)
        rows[g][p] += 1
    return ConfusionMatrix.from_rows(rows)


def one_vs_rest(matrix: ConfusionMatrix, label: ToxicityLabel) -> tuple[int, int, int, int]:
    """(TP, FP, FN, TN) for one class against the rest."""
    tp = matrix.cells[int(label)][int(label)]
    fp = sum(matrix.column(label)) - tp
    fn = sum(matrix.row(label)) - tp
    tn = matrix.total - tp - fp - fn
    return tp, fp, fn, tn


def _ratio(num: int, denom: int) -> float | None:
    return None if denom == 0 else num / denom


def per_class_metrics(matrix: ConfusionMatrix) -> dict[ToxicityLabel, ClassMetrics]:
    out = {}
    for label in LABEL_ORDER:
        tp, fp, fn, _ = one_vs_rest(matrix, label)
        precision = _ratio(tp, tp + fp)
        recall = _ratio(tp, tp + fn)
        if precision is None or recall is None:
            f1 = None
        elif precision + recall == 0:
            f1 = 0.0  # TP=0 with both FP and FN present
        else:
            f1 = 2 * precision * recall / (precision + recall)
        out[label] = ClassMetrics(precision=precision, recall=recall, f1=f1)
    return out


def accuracy(matrix: ConfusionMatrix) -> float | None:
    diagonal = sum(matrix.cells[i][i] for i in range(3))
    return _ratio(diagonal, matrix.total)


def macro_f1(metrics: dict[ToxicityLabel, ClassMetrics]) -> tuple[float | None, int]:
    """Unweighted mean of the defined per-class F1 values.

    Returns (macro value, number of classes that contributed); classes with
    undefined F1 are left out rather than counted as zero.
    """
    defined = [m.f1 for m in metrics.values() if m.f1 is not None]
    if not defined:
        return None, 0
    return sum(defined) / len(defined), len(defined)


def normalize_matrix(
    matrix: ConfusionMatrix, axis: str = "row"
) -> tuple[list[list[float]], list[bool]]:
    """Row-normalized (by gold class) or column-normalized matrix.

    All-zero rows/columns stay zero and are flagged in the returned list.
    """
    if axis not in ("row", "column"):
        raise ValueError("axis must be 'row' or 'column'")
    normalized = [[0.0] * 3 for _ in range(3)]
    flags = [False] * 3
    for i in range(3):
        if axis == "row":
            line = list(matrix.cells[i])
        else:
            line = [matrix.cells[g][i] for g in range(3)]
        total = sum(line)
        if total == 0:
            flags[i] = True
            continue
        for j, value in enumerate(line):
            if axis == "row":
                normalized[i][j] = value / total
            else:
                normalized[j][i] = value / total
    return normalized, flags


@dataclass
class EvalReport:
    """Everything a rendered report needs for one model."""

    model_name: str
    per_class: dict[ToxicityLabel, ClassMetrics]
    accuracy: float | None
    macro_f1: float | None
    macro_f1_classes: int = 3
    normalized: list[list[float]] | None = None
    zero_rows: list[bool] = field(default_factory=lambda: [False] * 3)
    matrix: ConfusionMatrix | None = None

    def to_json(self) -> str:
        doc = {
            "model": self.model_name,
            "accuracy": self.accuracy,
            "macro_f1": self.macro_f1,
            "macro_f1_classes": self.macro_f1_classes,
            "classes": {
                str(label): {
                    "precision": m.precision,
                    "recall": m.recall,
                    "f1": m.f1,
                }
                for label, m in self.per_class.items()
            },
            "normalized_matrix": self.normalized,
            "zero_rows": self.zero_rows,
            "confusion_matrix": [list(r) for r in self.matrix.cells] if self.matrix else None,
        }
        return json.dumps(doc, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, raw: str) -> "EvalReport":
        doc = json.loads(raw)
        per_class = {
            ToxicityLabel.parse(name): ClassMetrics(
                precision=vals["precision"], recall=vals["recall"], f1=vals["f1"]
            )
            for name, vals in doc["classes"].items()
        }
        matrix = None
        if doc.get("confusion_matrix"):
            matrix = ConfusionMatrix.from_rows(doc["confusion_matrix"])
        return cls(
            model_name=doc["model"],
            per_class=per_class,
            accuracy=doc["accuracy"],
            macro_f1=doc["macro_f1"],
            macro_f1_classes=doc.get("macro_f1_classes", 3),
            normalized=doc.get("normalized_matrix"),
            zero_rows=doc.get("zero_rows", [False] * 3),
            matrix=matrix,
        )

    @classmethod
    def load(cls, path: str | Path) -> "EvalReport":
        return cls.from_json(Path(path).read_text("utf-8"))


def build_report(
    model_name: str,
    gold: list[LabeledExample],
    predictions: list[Prediction],
    normalize_axis: str = "row",
) -> EvalReport:
    matrix = confusion_matrix(gold, predictions)
    metrics = per_class_metrics(matrix)
    macro, contributing = macro_f1(metrics)
    normalized, flags = normalize_matrix(matrix, normalize_axis)
    return EvalReport(
        model_name=model_name,
        per_class=metrics,
        accuracy=accuracy(matrix),
        macro_f1=macro,
        macro_f1_classes=contributing,
        normalized=normalized,
        zero_rows=flags,
        matrix=matrix,
    )
