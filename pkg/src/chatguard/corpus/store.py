"""Corpus file I/O: canonical line-delimited JSON plus a flat CSV form.

Canonical record: ``{schema, id, text, label?, annotator?, labeled_at?,
source: {match_id, event_index}}``. Optional fields are omitted when absent
and the writer is byte-stable. CSV carries only id,text,label; labels
imported from CSV get a labeled_at of 0 since the format has no timestamps.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

from chatguard.corpus.models import LabeledExample
from chatguard.corpus.transforms import normalize_text
from chatguard.errors import CorpusFormatError, DuplicateIdError
from chatguard.ingest.models import Channel
from chatguard.labels import ToxicityLabel

CORPUS_SCHEMA = 1


def example_to_record(example: LabeledExample) -> dict:
    record: dict = {"schema": CORPUS_SCHEMA, "id": example.id, "text": example.text}
    if example.label is not None:
        record["label"] = str(example.label)
    if example.annotator is not None:
        record["annotator"] = example.annotator
    if example.labeled_at is not None:
        record["labeled_at"] = example.labeled_at
    if example.source is not None:
        record["source"] = {"match_id": example.source[0], "event_index": example.source[1]}
    return record


def example_from_record(record: dict, where: str) -> LabeledExample:
    try:
        label = None
        if "label" in record:
            label = ToxicityLabel.parse(record["label"])
        source = None
        if "source" in record:
            source = (record["source"]["match_id"], record["source"]["event_index"])
        return LabeledExample(
            id=record["id"],
            text=record["text"],
            label=label,
            annotator=record.get("annotator"),
            labeled_at=record.get("labeled_at"),
            source=source,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CorpusFormatError(f"{where}: {exc}") from exc


def write_corpus(examples: list[LabeledExample], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for example in examples:
            fh.write(
                json.dumps(
                    example_to_record(example),
                    sort_keys=True,
                    ensure_ascii=False,
                    separators=(",", ":"),
                )
                + "\n"
            )


def read_corpus(path: str | Path) -> list[LabeledExample]:
    examples: list[LabeledExample] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusFormatError(f"{path} line {line_no}: {exc}") from exc
            example = example_from_record(record, f"{path} line {line_no}")
            if example.id in seen:
                raise DuplicateIdError(f"{path} line {line_no}: duplicate id {example.id!r}")
            seen.add(example.id)
            examples.append(example)
    return examples


def _write_csv(examples: list[LabeledExample], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "text", "label"])
        for example in examples:
            writer.writerow(
                [example.id, example.text, "" if example.label is None else str(example.label)]
            )


def _read_csv(path: str | Path) -> list[LabeledExample]:
    examples: list[LabeledExample] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or [f.strip() for f in reader.fieldnames[:3]] != ["id", "text", "label"]:
            raise CorpusFormatError(f"{path}: expected header id,text,label")
        for row_no, row in enumerate(reader, start=2):
            raw_label = (row.get("label") or "").strip()
            label = None
            labeled_at = None
            if raw_label:
                try:
                    label = ToxicityLabel.parse(raw_label)
                except ValueError as exc:
                    raise CorpusFormatError(f"{path} row {row_no}: {exc}") from exc
                labeled_at = 0  # CSV has no timestamp column
            example_id = (row.get("id") or "").strip()
            if not example_id:
                raise CorpusFormatError(f"{path} row {row_no}: empty id")
            if example_id in seen:
                raise DuplicateIdError(f"{path} row {row_no}: duplicate id {example_id!r}")
            seen.add(example_id)
            examples.append(
                LabeledExample(id=example_id, text=row.get("text") or "", label=label, labeled_at=labeled_at)
            )
    return examples


def _resolve_format(path: str | Path, fmt: str | None) -> str:
    if fmt is not None:
        if fmt not in ("jsonl", "csv"):
            raise ValueError(f"unknown corpus format: {fmt!r}")
        return fmt
    return "csv" if str(path).endswith(".csv") else "jsonl"


def import_corpus(path: str | Path, fmt: str | None = None) -> list[LabeledExample]:
    return _read_csv(path) if _resolve_format(path, fmt) == "csv" else read_corpus(path)


def export_corpus(examples: list[LabeledExample], path: str | Path, fmt: str | None = None) -> None:
    if _resolve_format(path, fmt) == "csv":
        _write_csv(examples, path)
    else:
        write_corpus(examples, path)


def examples_from_events(records: list[dict], *, include_chatwheel: bool = False) -> list[LabeledExample]:
    """Turn consolidated harvest records into unlabeled examples.

    Typed player chat only by default; `include_chatwheel` re-admits canned
    messages. Texts are whitespace-normalized and empties dropped. Ids are
    derived from provenance so re-preparing the same file is stable.
    """
    examples = []
    for record in records:
        channel = Channel.parse(record["channel"])
        if channel is Channel.OTHER:
            continue
        if channel is Channel.CHAT_WHEEL and not include_chatwheel:
            continue
        text = normalize_text(record["text"])
        if not text:
            continue
        match_id, event_index = record["match_id"], record["event_index"]
        examples.append(
            LabeledExample(
                id=f"m{match_id}e{event_index}",
                text=text,
                source=(match_id, event_index),
            )
        )
    return examples
