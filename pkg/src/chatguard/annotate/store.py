"""Label store behind the annotation service.

Mutations are serialized through one lock and made durable by an append-only
journal next to the corpus file: every accepted submission is written and
fsynced before the caller sees success, so a crash loses nothing. `flush`
compacts the journal back into the canonical corpus file (write temp, rename,
then drop the journal); startup replays any journal left by a crash.

Writers use optimistic concurrency: a submission carries the revision it saw,
and only the matching revision wins. Resubmitting the exact same decision is
accepted as a no-op so a retried request is not punished with a conflict.
"""

from __future__ import annotations

import json
import os
import random
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from chatguard.corpus.models import ClassDistribution, LabeledExample
from chatguard.corpus.store import read_corpus, write_corpus
from chatguard.errors import ChatguardError
from chatguard.labels import LABEL_ORDER, ToxicityLabel

STATUS_UNLABELED = "unlabeled"
STATUS_LABELED = "labeled"
STATUS_SKIPPED = "skipped"

STRATEGIES = ("sequential", "random", "disagreement")

CONTEXT_WINDOW = 2  # neighboring chats from the same match, by event index


class NotFoundError(ChatguardError):
    def __init__(self, example_id: str):
        super().__init__(f"unknown example id: {example_id}")
        self.example_id = example_id


class ConflictError(ChatguardError):
    """Stale expected_revision; carries the current task state."""

    def __init__(self, current: "AnnotationTask"):
        super().__init__(
            f"revision conflict on {current.example_id}: current revision is {current.revision}"
        )
        self.current = current


@dataclass
class AnnotationTask:
    example_id: str
    text: str
    context: list[str]
    status: str
    revision: int
    label: ToxicityLabel | None = None

    def as_dict(self) -> dict:
        doc = {
            "example_id": self.example_id,
            "text": self.text,
            "context": self.context,
            "status": self.status,
            "revision": self.revision,
        }
        if self.label is not None:
            doc["label"] = str(self.label)
        return doc


@dataclass(frozen=True)
class AnnotationSubmission:
    example_id: str
    label: ToxicityLabel
    annotator: str
    expected_revision: int


@dataclass
class ProgressStats:
    by_status: dict[str, int]
    distribution: ClassDistribution
    by_annotator: dict[str, int]
    corpus_size: int

    def as_dict(self) -> dict:
        return {
            "by_status": self.by_status,
            "distribution": self.distribution.as_dict(),
            "by_annotator": self.by_annotator,
            "corpus_size": self.corpus_size,
        }


@dataclass
class _Entry:
    example: LabeledExample
    status: str = STATUS_UNLABELED
    revision: int = 0


class AnnotationStore:
    def __init__(
        self,
        corpus_path: str | Path,
        *,
        session_seed: int = 0,
        journal_path: str | Path | None = None,
        disagreement_fn: Callable[[str], bool] | None = None,
        clock: Callable[[], float] = time.time,
    ):
        self.corpus_path = Path(corpus_path)
        self.journal_path = Path(journal_path) if journal_path else Path(str(corpus_path) + ".journal")
        self._clock = clock
        self._lock = threading.Lock()
        self._disagreement_fn = disagreement_fn
        self._disagreement_cache: dict[str, bool] = {}

        examples = read_corpus(self.corpus_path)
        self._order = [e.id for e in examples]
        self._position = {example_id: i for i, example_id in enumerate(self._order)}
        self._entries: dict[str, _Entry] = {}
        for example in examples:
            status = STATUS_LABELED if example.label is not None else STATUS_UNLABELED
            self._entries[example.id] = _Entry(example=example, status=status)
        self._contexts = _build_contexts(examples)
        self._replay_journal()

        shuffled = self._order[:]
        random.Random(session_seed).shuffle(shuffled)
        self._random_order = shuffled

        self._journal_fh = open(self.journal_path, "a", encoding="utf-8")

    # -- durability ----------------------------------------------------------

    def _replay_journal(self) -> None:
        if not self.journal_path.exists():
            return
        with open(self.journal_path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                row = json.loads(line)
                entry = self._entries.get(row["example_id"])
                if entry is None:
                    continue
                if row["op"] == "label":
                    entry.example.label = ToxicityLabel.parse(row["label"])
                    entry.example.annotator = row.get("annotator")
                    entry.example.labeled_at = row.get("labeled_at")
                    entry.status = STATUS_LABELED
                elif row["op"] == "skip":
                    entry.status = STATUS_SKIPPED
                entry.revision = max(entry.revision, row["revision"])

    def _journal(self, row: dict) -> None:
        self._journal_fh.write(json.dumps(row, ensure_ascii=False, sort_keys=True) + "\n")
        self._journal_fh.flush()
        os.fsync(self._journal_fh.fileno())

    def flush(self) -> None:
        """Compact accepted labels into the corpus file and drop the journal."""
        with self._lock:
            examples = [self._entries[i].example for i in self._order]
            tmp = self.corpus_path.with_suffix(self.corpus_path.suffix + ".tmp")
            write_corpus(examples, tmp)
            os.replace(tmp, self.corpus_path)
            self._journal_fh.close()
            self.journal_path.unlink(missing_ok=True)
            self._journal_fh = open(self.journal_path, "a", encoding="utf-8")

    def close(self) -> None:
        self.flush()
        self._journal_fh.close()

    # -- queries -------------------------------------------------------------

    def _task(self, entry: _Entry) -> AnnotationTask:
        return AnnotationTask(
            example_id=entry.example.id,
            text=entry.example.text,
            context=self._contexts.get(entry.example.id, []),
            status=entry.status,
            revision=entry.revision,
            label=entry.example.label,
        )

    def get_task(self, example_id: str) -> AnnotationTask:
        with self._lock:
            entry = self._entries.get(example_id)
            if entry is None:
                raise NotFoundError(example_id)
            return self._task(entry)

    def _disagrees(self, example_id: str) -> bool:
        if self._disagreement_fn is None:
            return False
        if example_id not in self._disagreement_cache:
            text = self._entries[example_id].example.text
            self._disagreement_cache[example_id] = bool(self._disagreement_fn(text))
        return self._disagreement_cache[example_id]

    def next_tasks(self, n: int, strategy: str = "sequential") -> list[AnnotationTask]:
        """Up to n unlabeled tasks.

        sequential: corpus order. random: the session's seeded shuffle.
        disagreement: items where the rule-based and probabilistic backends
        disagree come first, then corpus order.
        """
        if n <= 0:
            raise ValueError("n must be positive")
        if strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy: {strategy!r}")
        with self._lock:
            if strategy == "random":
                order = self._random_order
            else:
                order = self._order
            candidates = [i for i in order if self._entries[i].status == STATUS_UNLABELED]
        if strategy == "disagreement":
            candidates.sort(key=lambda i: (not self._disagrees(i), self._position[i]))
        with self._lock:
            return [
                self._task(self._entries[i])
                for i in candidates[:n]
                if self._entries[i].status == STATUS_UNLABELED
            ]

    def progress(self) -> ProgressStats:
        with self._lock:
            by_status = {STATUS_UNLABELED: 0, STATUS_LABELED: 0, STATUS_SKIPPED: 0}
            counts = {label: 0 for label in LABEL_ORDER}
            by_annotator: dict[str, int] = {}
            for entry in self._entries.values():
                by_status[entry.status] += 1
                if entry.status == STATUS_LABELED and entry.example.label is not None:
                    counts[entry.example.label] += 1
                    if entry.example.annotator:
                        by_annotator[entry.example.annotator] = (
                            by_annotator.get(entry.example.annotator, 0) + 1
                        )
            return ProgressStats(
                by_status=by_status,
                distribution=ClassDistribution(
                    non_toxic=counts[ToxicityLabel.NON_TOXIC],
                    mild=counts[ToxicityLabel.MILD],
                    toxic=counts[ToxicityLabel.TOXIC],
                ),
                by_annotator=by_annotator,
                corpus_size=len(self._entries),
            )

    # -- mutations -----------------------------------------------------------

    def submit(self, submission: AnnotationSubmission) -> AnnotationTask:
        with self._lock:
            entry = self._entries.get(submission.example_id)
            if entry is None:
                raise NotFoundError(submission.example_id)
            if (
                submission.expected_revision == entry.revision - 1
                and entry.status == STATUS_LABELED
                and entry.example.label is submission.label
            ):
                return self._task(entry)  # replayed request: accept as no-op
            if submission.expected_revision != entry.revision:
                raise ConflictError(self._task(entry))
            entry.example.label = submission.label
            entry.example.annotator = submission.annotator
            entry.example.labeled_at = int(self._clock())
            entry.status = STATUS_LABELED
            entry.revision += 1
            self._journal(
                {
                    "op": "label",
                    "example_id": submission.example_id,
                    "label": str(submission.label),
                    "annotator": submission.annotator,
                    "labeled_at": entry.example.labeled_at,
                    "revision": entry.revision,
                }
            )
            return self._task(entry)

    def skip(self, example_id: str, expected_revision: int, annotator: str = "") -> AnnotationTask:
        with self._lock:
            entry = self._entries.get(example_id)
            if entry is None:
                raise NotFoundError(example_id)
            if expected_revision == entry.revision - 1 and entry.status == STATUS_SKIPPED:
                return self._task(entry)
            if expected_revision != entry.revision:
                raise ConflictError(self._task(entry))
            entry.status = STATUS_SKIPPED
            entry.revision += 1
            self._journal(
                {
                    "op": "skip",
                    "example_id": example_id,
                    "annotator": annotator,
                    "revision": entry.revision,
                }
            )
            return self._task(entry)


def _build_contexts(examples: list[LabeledExample]) -> dict[str, list[str]]:
    """Neighboring chat lines from the same match, by event index."""
    by_match: dict[int, list[tuple[int, LabeledExample]]] = {}
    for example in examples:
        if example.source is not None:
            by_match.setdefault(example.source[0], []).append((example.source[1], example))
    contexts: dict[str, list[str]] = {}
    for rows in by_match.values():
        rows.sort()
        for pos, (index, example) in enumerate(rows):
            neighbors = [
                other.text
                for other_pos, (other_index, other) in enumerate(rows)
                if other_pos != pos and abs(other_index - index) <= CONTEXT_WINDOW
            ]
            if neighbors:
                contexts[example.id] = neighbors
    return contexts
