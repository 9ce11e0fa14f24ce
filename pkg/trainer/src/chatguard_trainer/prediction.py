"""Emit predictions in the toolkit's interchange format.

One JSON line per example: {"id", "label", "scores", "model"} with lowercase
label names and softmax scores. Rows are validated against that contract
before anything is written; a violation aborts with nothing on disk.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import torch
from transformers import AutoModelForSequenceClassification, AutoTokenizer

from chatguard_trainer.data import ID_TO_LABEL, LABELS, read_corpus
from chatguard_trainer.training import LOG_FILENAME, TrainingLog

SCORE_SUM_TOLERANCE = 1e-6


class InterchangeError(Exception):
    pass


def _validate_row(row: dict) -> None:
    if set(row) != {"id", "label", "scores", "model"}:
        raise InterchangeError(f"unexpected fields: {sorted(row)}")
    if row["label"] not in LABELS:
        raise InterchangeError(f"label outside the closed set: {row['label']!r}")
    scores = row["scores"]
    if set(scores) != set(LABELS):
        raise InterchangeError(f"scores must cover all labels: {sorted(scores)}")
    total = sum(scores.values())
    if not math.isclose(total, 1.0, rel_tol=0, abs_tol=SCORE_SUM_TOLERANCE):
        raise InterchangeError(f"scores sum to {total}, not 1")
    best = max(scores.values())
    # ties break toward higher severity, matching the evaluator's contract
    argmax = [name for name in reversed(LABELS) if scores[name] == best][0]
    if argmax != row["label"]:
        raise InterchangeError(f"label {row['label']!r} is not the score argmax")


@torch.no_grad()
def predict_to_file(
    model_dir: str | Path,
    corpus_path: str | Path,
    out_path: str | Path,
    batch_size: int = 16,
    max_length: int = 64,
) -> int:
    """Predict every corpus row and write the interchange file; returns the
    number of rows written."""
    model_dir = Path(model_dir)
    tokenizer = AutoTokenizer.from_pretrained(model_dir)
    model = AutoModelForSequenceClassification.from_pretrained(model_dir)
    model.eval()
    model_name = "finetuned"
    if (model_dir / LOG_FILENAME).exists():
        model_name = TrainingLog.load(model_dir).model_name

    rows = read_corpus(corpus_path, require_labels=False)
    out_rows: list[dict] = []
    for start in range(0, len(rows), batch_size):
        batch = rows[start : start + batch_size]
        encoded = tokenizer(
            [row.text for row in batch],
            padding=True,
            truncation=True,
            max_length=max_length,
            return_tensors="pt",
        )
        probs = torch.softmax(model(**encoded).logits, dim=-1)
        for row, row_probs in zip(batch, probs):
            scores = {ID_TO_LABEL[i]: float(p) for i, p in enumerate(row_probs)}
            norm = sum(scores.values())
            scores = {name: value / norm for name, value in scores.items()}
            best = max(scores.values())
            label = [name for name in reversed(LABELS) if scores[name] == best][0]
            out_rows.append({"id": row.id, "label": label, "scores": scores, "model": model_name})

    for out_row in out_rows:
        _validate_row(out_row)
    with open(out_path, "w", encoding="utf-8") as fh:
        for out_row in out_rows:
            fh.write(json.dumps(out_row, ensure_ascii=False, sort_keys=True) + "\n")
    return len(out_rows)
