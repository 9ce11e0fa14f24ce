"""The prediction interchange format that decouples classifier backends from
the evaluation harness: line-delimited JSON ``{id, label, scores?, model}``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

from chatguard.corpus.models import LabeledExample
from chatguard.errors import CorpusFormatError
from chatguard.labels import LABEL_ORDER, ToxicityLabel

SCORE_SUM_TOLERANCE = 1e-9


def choose_label(scores: dict[ToxicityLabel, float]) -> ToxicityLabel:
    """Argmax with ties broken toward higher severity."""
    best = max(scores.values())
    for label in reversed(LABEL_ORDER):
        if label in scores and scores[label] == best:
            return label
    raise ValueError("empty score map")


@dataclass(frozen=True)
class Prediction:
    """One model decision for one example."""

    example_id: str
    predicted: ToxicityLabel
    model_name: str
    scores: dict[ToxicityLabel, float] | None = None

    def __post_init__(self) -> None:
        if self.scores is not None:
            total = sum(self.scores.values())
            if not math.isclose(total, 1.0, rel_tol=0, abs_tol=SCORE_SUM_TOLERANCE):
                raise ValueError(f"scores sum to {total}, not 1")
            if choose_label(self.scores) is not self.predicted:
                raise ValueError(
                    f"predicted {self.predicted} disagrees with score argmax"
                )


def prediction_to_record(pred: Prediction) -> dict:
    record: dict = {
        "id": pred.example_id,
        "label": str(pred.predicted),
        "model": pred.model_name,
    }
    if pred.scores is not None:
        record["scores"] = {str(label): value for label, value in pred.scores.items()}
    return record


def prediction_from_record(record: dict, where: str) -> Prediction:
    try:
        scores = None
        if "scores" in record:
            scores = {
                ToxicityLabel.parse(key): value for key, value in record["scores"].items()
            }
        return Prediction(
            example_id=record["id"],
            predicted=ToxicityLabel.parse(record["label"]),
            model_name=record["model"],
            scores=scores,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CorpusFormatError(f"{where}: {exc}") from exc


def write_predictions(predictions: list[Prediction], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for pred in predictions:
            fh.write(
                json.dumps(prediction_to_record(pred), ensure_ascii=False, sort_keys=True) + "\n"
            )


def read_predictions(path: str | Path) -> list[Prediction]:
    predictions = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusFormatError(f"{path} line {line_no}: {exc}") from exc
            predictions.append(prediction_from_record(record, f"{path} line {line_no}"))
    return predictions


class Backend(Protocol):
    """Anything that can turn examples into predictions."""

    name: str

    def predict_batch(self, examples: list[LabeledExample]) -> tuple[list[Prediction], list[dict]]:
        """Return (predictions, error manifest rows)."""
        ...


def predict_corpus(
    backend: Backend, examples: list[LabeledExample], out_path: str | Path
) -> tuple[int, int]:
    """Run a backend over a corpus part and write the interchange file.

    Per-example failures do not abort the batch: the predictions that
    succeeded are written, and failures land in `<out>.errors.jsonl`.
    Returns (written, failed).
    """
    predictions, failures = backend.predict_batch(examples)
    write_predictions(predictions, out_path)
    if failures:
        manifest = Path(str(out_path) + ".errors.jsonl")
        with open(manifest, "w", encoding="utf-8") as fh:
            for row in failures:
                fh.write(json.dumps(row, ensure_ascii=False, sort_keys=True) + "\n")
    return len(predictions), len(failures)
