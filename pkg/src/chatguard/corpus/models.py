"""Dataset domain types: examples, distributions, split assignments."""

from __future__ import annotations

from dataclasses import dataclass, field

from chatguard.labels import ToxicityLabel


@dataclass
class LabeledExample:
    """One chat text with an optional severity label.

    `id` must be unique within a corpus. A present label implies a present
    `labeled_at` timestamp; construction enforces that. `source` carries the
    (match_id, event_index) provenance when the example came from a harvest.
    """

    id: str
    text: str
    label: ToxicityLabel | None = None
    annotator: str | None = None
    labeled_at: int | None = None
    source: tuple[int, int] | None = None

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("example id must be non-empty")
        if self.label is not None and self.labeled_at is None:
            raise ValueError(f"example {self.id}: label present without labeled_at")

    @property
    def labeled(self) -> bool:
        return self.label is not None


@dataclass(frozen=True)
class ClassDistribution:
    """Per-class counts of a fully labeled corpus."""

    non_toxic: int
    mild: int
    toxic: int

    def __post_init__(self) -> None:
        for name in ("non_toxic", "mild", "toxic"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} count must be >= 0")

    @property
    def total(self) -> int:
        return self.non_toxic + self.mild + self.toxic

    def count(self, label: ToxicityLabel) -> int:
        return {
            ToxicityLabel.NON_TOXIC: self.non_toxic,
            ToxicityLabel.MILD: self.mild,
            ToxicityLabel.TOXIC: self.toxic,
        }[label]

    def as_dict(self) -> dict[str, int]:
        return {
            "non-toxic": self.non_toxic,
            "mild": self.mild,
            "toxic": self.toxic,
            "total": self.total,
        }


@dataclass(frozen=True)
class UndersamplePolicy:
    """Majority-class reduction target.

    The majority class is cut to round(majority_ratio * total minority count)
    by seeded uniform sampling without replacement. The default ratio of 1.2
    retains 1.2 examples of the majority class per minority example.
    """

    majority_ratio: float = 1.2
    seed: int = 0

    def __post_init__(self) -> None:
        if self.majority_ratio <= 0:
            raise ValueError("majority_ratio must be positive")


@dataclass
class SplitAssignment:
    """Train/test membership for every example id in a corpus."""

    assignment: dict[str, str] = field(default_factory=dict)  # id -> "train"|"test"
    seed: int = 0
    test_fraction: float = 0.25
    stratified: bool = True

    @property
    def test_ids(self) -> list[str]:
        return [i for i, part in self.assignment.items() if part == "test"]

    @property
    def train_ids(self) -> list[str]:
        return [i for i, part in self.assignment.items() if part == "train"]
