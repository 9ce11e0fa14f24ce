"""The closed three-class severity scale used across the toolkit."""

from __future__ import annotations

import enum


class ToxicityLabel(enum.IntEnum):
    """Severity classes, totally ordered: NON_TOXIC < MILD < TOXIC."""

    NON_TOXIC = 0
    MILD = 1
    TOXIC = 2

    def __str__(self) -> str:
        return _LABEL_TO_STR[self]

    @classmethod
    def parse(cls, raw: str) -> "ToxicityLabel":
        """Parse a serialized label, case-insensitively.

        Accepts the canonical lowercase spellings ("non-toxic", "mild",
        "toxic") plus the underscore/bare variants of non-toxic.
        Raises ValueError for anything outside the closed set.
        """
        key = raw.strip().lower()
        try:
            return _STR_TO_LABEL[key]
        except KeyError:
            raise ValueError(f"unknown toxicity label: {raw!r}") from None


_LABEL_TO_STR = {
    ToxicityLabel.NON_TOXIC: "non-toxic",
    ToxicityLabel.MILD: "mild",
    ToxicityLabel.TOXIC: "toxic",
}

_STR_TO_LABEL = {
    "non-toxic": ToxicityLabel.NON_TOXIC,
    "non_toxic": ToxicityLabel.NON_TOXIC,
    "nontoxic": ToxicityLabel.NON_TOXIC,
    "mild": ToxicityLabel.MILD,
    "toxic": ToxicityLabel.TOXIC,
}

# Fixed class order for confusion matrices and reports.
LABEL_ORDER = (ToxicityLabel.NON_TOXIC, ToxicityLabel.MILD, ToxicityLabel.TOXIC)
