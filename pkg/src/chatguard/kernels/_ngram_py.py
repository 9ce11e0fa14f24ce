"""Pure-Python reference implementation of the n-gram kernels.

Semantics here are the contract; the Cython build must match exactly.
"""

from __future__ import annotations


def char_ngram_counts(text: str, n: int) -> dict[str, int]:
    """Count all length-n character substrings of `text` (sliding window).

    Texts shorter than n yield an empty table. No padding or case folding
    happens here; callers normalize first.
    """
    if n <= 0:
        raise ValueError("n must be positive")
    counts: dict[str, int] = {}
    for i in range(len(text) - n + 1):
        gram = text[i : i + n]
        counts[gram] = counts.get(gram, 0) + 1
    return counts


def score_log_table(
    counts: dict[str, int], log_table: dict[str, float], default: float
) -> float:
    """Accumulate sum(count * log_table.get(gram, default)) over `counts`."""
    total = 0.0
    for gram, count in counts.items():
        total += count * log_table.get(gram, default)
    return total
