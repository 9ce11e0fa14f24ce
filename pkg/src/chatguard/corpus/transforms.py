"""Deterministic corpus transformations: stats, balancing, splitting."""

from __future__ import annotations

import math
import random

from chatguard.corpus.models import (
    ClassDistribution,
    LabeledExample,
    SplitAssignment,
    UndersamplePolicy,
)
from chatguard.errors import (
    AmbiguousMajorityError,
    IncompleteLabelsError,
    StratificationError,
)
from chatguard.labels import LABEL_ORDER, ToxicityLabel


def normalize_text(text: str) -> str:
    """Trim and collapse whitespace runs to single spaces; casing untouched."""
    return " ".join(text.split())


def _round_half_up(value: float) -> int:
    return int(math.floor(value + 0.5))


def _require_labeled(corpus: list[LabeledExample]) -> None:
    missing = [e.id for e in corpus if e.label is None]
    if missing:
        raise IncompleteLabelsError(missing)


def compute_distribution(corpus: list[LabeledExample]) -> ClassDistribution:
    _require_labeled(corpus)
    counts = {label: 0 for label in LABEL_ORDER}
    for example in corpus:
        counts[example.label] += 1
    return ClassDistribution(
        non_toxic=counts[ToxicityLabel.NON_TOXIC],
        mild=counts[ToxicityLabel.MILD],
        toxic=counts[ToxicityLabel.TOXIC],
    )


def undersample_majority(
    corpus: list[LabeledExample], policy: UndersamplePolicy
) -> tuple[list[LabeledExample], int]:
    """Cut the strict majority class down to round(ratio * minority total).

    Minority examples pass through untouched and input order is preserved.
    Returns (reduced corpus, number of removed examples). A corpus whose
    majority is already at or under target is returned unchanged; tied
    majorities are ambiguous and rejected.
    """
    _require_labeled(corpus)
    dist = compute_distribution(corpus)
    counts = {label: dist.count(label) for label in LABEL_ORDER}
    top = max(counts.values())
    top_classes = [label for label, c in counts.items() if c == top]
    minority_total = dist.total - top

    if len(top_classes) > 1:
        target_if_unique = _round_half_up(policy.majority_ratio * (dist.total - top))
        if top > target_if_unique:
            names = ", ".join(str(label) for label in top_classes)
            raise AmbiguousMajorityError(f"majority class is tied between: {names}")
        return list(corpus), 0

    majority = top_classes[0]
    target = _round_half_up(policy.majority_ratio * minority_total)
    if counts[majority] <= target:
        return list(corpus), 0

    majority_positions = [i for i, e in enumerate(corpus) if e.label is majority]
    rng = random.Random(policy.seed)
    kept_positions = set(rng.sample(majority_positions, target))
    reduced = [
        e
        for i, e in enumerate(corpus)
        if e.label is not majority or i in kept_positions
    ]
    removed = len(corpus) - len(reduced)
    return reduced, removed


def split(
    corpus: list[LabeledExample],
    test_fraction: float,
    seed: int,
    stratified: bool = True,
) -> SplitAssignment:
    """Assign every example to train or test, deterministically per seed.

    |test| is round(test_fraction * N) exactly. Under stratification each
    class contributes its proportional share (largest-remainder rounding, so
    every class lands within one example of test_fraction * class size).
    """
    _require_labeled(corpus)
    if not 0 < test_fraction < 1:
        raise ValueError("test_fraction must be in (0, 1)")
    n = len(corpus)
    n_test = _round_half_up(test_fraction * n)
    assignment: dict[str, str] = {}

    if not stratified:
        ids = [e.id for e in corpus]
        rng = random.Random(seed)
        shuffled = ids[:]
        rng.shuffle(shuffled)
        test_ids = set(shuffled[:n_test])
        for example_id in ids:
            assignment[example_id] = "test" if example_id in test_ids else "train"
        return SplitAssignment(assignment, seed=seed, test_fraction=test_fraction, stratified=False)

    by_class: dict[ToxicityLabel, list[str]] = {label: [] for label in LABEL_ORDER}
    for example in corpus:
        by_class[example.label].append(example.id)
    present = [label for label in LABEL_ORDER if by_class[label]]
    for label in present:
        if len(by_class[label]) < 2:
            raise StratificationError(
                f"class {label} has {len(by_class[label])} example(s); "
                "need at least 2 to stratify"
            )

    # Largest-remainder apportionment of n_test across classes.
    quotas = {label: test_fraction * len(by_class[label]) for label in present}
    shares = {label: math.floor(quotas[label]) for label in present}
    leftover = n_test - sum(shares.values())
    by_remainder = sorted(
        present, key=lambda label: (quotas[label] - shares[label], len(by_class[label])), reverse=True
    )
    for label in by_remainder[:leftover]:
        shares[label] += 1

    rng = random.Random(seed)
    for label in present:
        ids = by_class[label][:]
        rng.shuffle(ids)
        test_ids = set(ids[: shares[label]])
        for example_id in by_class[label]:
            assignment[example_id] = "test" if example_id in test_ids else "train"
    return SplitAssignment(assignment, seed=seed, test_fraction=test_fraction, stratified=True)
