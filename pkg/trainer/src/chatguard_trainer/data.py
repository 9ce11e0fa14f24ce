"""Reader for the canonical corpus format (the toolkit's external contract):
line-delimited JSON objects with at least {id, text, label}."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

LABELS = ("non-toxic", "mild", "toxic")
LABEL_TO_ID = {name: i for i, name in enumerate(LABELS)}
ID_TO_LABEL = dict(enumerate(LABELS))


class CorpusError(Exception):
    pass


@dataclass(frozen=True)
class Row:
    id: str
    text: str
    label_id: int | None


def read_corpus(path: str | Path, *, require_labels: bool) -> list[Row]:
    rows: list[Row] = []
    unlabeled: list[str] = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
                example_id, text = record["id"], record["text"]
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise CorpusError(f"{path} line {line_no}: {exc}") from exc
            raw_label = record.get("label")
            if raw_label is None:
                unlabeled.append(example_id)
                rows.append(Row(example_id, text, None))
                continue
            key = str(raw_label).strip().lower()
            if key not in LABEL_TO_ID:
                raise CorpusError(f"{path} line {line_no}: unknown label {raw_label!r}")
            rows.append(Row(example_id, text, LABEL_TO_ID[key]))
    if require_labels and unlabeled:
        preview = ", ".join(unlabeled[:5])
        raise CorpusError(f"{path}: unlabeled examples: {preview}")
    if not rows:
        raise CorpusError(f"{path}: empty corpus")
    return rows


def require_all_classes(rows: list[Row], where: str) -> None:
    present = {row.label_id for row in rows if row.label_id is not None}
    missing = [name for name, i in LABEL_TO_ID.items() if i not in present]
    if missing:
        raise CorpusError(f"{where}: no examples of: {', '.join(missing)}")
