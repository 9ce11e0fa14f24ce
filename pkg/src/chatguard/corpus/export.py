"""Prompt/completion export for hosted-model fine-tuning.

Each labeled example becomes one JSON line with exactly two fields:
``{"prompt": text + prompt_suffix, "completion": completion_prefix + label}``.
The label serializes lowercase. `import_prompt_completion` inverts the
template, so export/import round-trips text and label.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from chatguard.corpus.models import LabeledExample
from chatguard.errors import CorpusFormatError, IncompleteLabelsError
from chatguard.labels import ToxicityLabel


@dataclass(frozen=True)
class PromptTemplate:
    """Separator configuration for the two-field training record."""

    prompt_suffix: str = "\n\n###\n\n"
    completion_prefix: str = " "


def export_prompt_completion(
    examples: list[LabeledExample],
    path: str | Path,
    template: PromptTemplate = PromptTemplate(),
) -> int:
    """Write one {"prompt", "completion"} line per example; returns count."""
    missing = [e.id for e in examples if e.label is None]
    if missing:
        raise IncompleteLabelsError(missing)
    with open(path, "w", encoding="utf-8") as fh:
        for example in examples:
            row = {
                "prompt": example.text + template.prompt_suffix,
                "completion": template.completion_prefix + str(example.label),
            }
            fh.write(json.dumps(row, ensure_ascii=False) + "\n")
    return len(examples)


def import_prompt_completion(
    path: str | Path, template: PromptTemplate = PromptTemplate()
) -> list[tuple[str, ToxicityLabel]]:
    """Invert the export template back to (text, label) pairs."""
    rows: list[tuple[str, ToxicityLabel]] = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                row = json.loads(line)
                prompt, completion = row["prompt"], row["completion"]
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise CorpusFormatError(f"{path} line {line_no}: {exc}") from exc
            if template.prompt_suffix and prompt.endswith(template.prompt_suffix):
                prompt = prompt[: -len(template.prompt_suffix)]
            if template.completion_prefix and completion.startswith(template.completion_prefix):
                completion = completion[len(template.completion_prefix):]
            try:
                label = ToxicityLabel.parse(completion)
            except ValueError as exc:
                raise CorpusFormatError(f"{path} line {line_no}: {exc}") from exc
            rows.append((prompt, label))
    return rows
