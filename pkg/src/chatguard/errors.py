"""Exception hierarchy shared across modules."""

from __future__ import annotations


class ChatguardError(Exception):
    """Base class for all toolkit errors."""


# --- ingest ---------------------------------------------------------------


class TransportError(ChatguardError):
    """Network-level failure; safe to retry."""


class RateLimitExceeded(ChatguardError):
    """HTTP 429 persisted past the retry budget."""


class FetchError(ChatguardError):
    """Non-2xx response that is not retryable."""

    def __init__(self, status: int, message: str = ""):
        super().__init__(message or f"fetch failed with HTTP {status}")
        self.status = status


class MatchNotFound(ChatguardError):
    """HTTP 404 for a match detail request; callers skip the match."""

    def __init__(self, match_id: int):
        super().__init__(f"match {match_id} not found")
        self.match_id = match_id


class ChatParseError(ChatguardError):
    """Malformed match body; carries the match id and byte offset."""

    def __init__(self, match_id: int, offset: int, message: str = ""):
        super().__init__(
            message or f"malformed body for match {match_id} at byte {offset}"
        )
        self.match_id = match_id
        self.offset = offset


class ShardCorruptError(ChatguardError):
    """A shard file could not be parsed; names the offending path."""

    def __init__(self, path: str, line_no: int, message: str = ""):
        super().__init__(message or f"corrupt shard {path} at line {line_no}")
        self.path = path
        self.line_no = line_no


# --- corpus ---------------------------------------------------------------


class CorpusFormatError(ChatguardError):
    """Unparseable corpus row; message names the row."""


class DuplicateIdError(ChatguardError):
    """A corpus contains the same example id more than once."""


class IncompleteLabelsError(ChatguardError):
    """An operation requiring full labels found unlabeled examples."""

    def __init__(self, missing_ids: list[str]):
        preview = ", ".join(missing_ids[:5])
        more = "" if len(missing_ids) <= 5 else f" (+{len(missing_ids) - 5} more)"
        super().__init__(f"unlabeled examples: {preview}{more}")
        self.missing_ids = missing_ids


class AmbiguousMajorityError(ChatguardError):
    """Undersampling found two or more classes tied for majority."""


class StratificationError(ChatguardError):
    """Stratified split requested but a class is too small to split."""


# --- classify -------------------------------------------------------------


class TrainingError(ChatguardError):
    """Invalid training corpus (e.g. a class with no examples)."""


class ModelFormatError(ChatguardError):
    """Model file schema version mismatch or corrupt serialization."""


class UnparseableCompletion(ChatguardError):
    """Remote completion did not map to any label; keeps the raw text."""

    def __init__(self, example_id: str, raw: str):
        super().__init__(f"completion for {example_id!r} unparseable: {raw!r}")
        self.example_id = example_id
        self.raw = raw


# --- evaluation -----------------------------------------------------------


class PredictionMismatchError(ChatguardError):
    """Prediction ids do not exactly cover the gold ids."""

    def __init__(self, missing: list[str], extra: list[str], duplicates: list[str]):
        parts = []
        if missing:
            parts.append(f"missing: {sorted(missing)[:5]}")
        if extra:
            parts.append(f"extra: {sorted(extra)[:5]}")
        if duplicates:
            parts.append(f"duplicate: {sorted(duplicates)[:5]}")
        super().__init__("prediction/gold id mismatch; " + "; ".join(parts))
        self.missing = missing
        self.extra = extra
        self.duplicates = duplicates
