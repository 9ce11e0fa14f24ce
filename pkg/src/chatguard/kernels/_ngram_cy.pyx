# cython: language_level=3
"""Compiled twin of _ngram_py. Same functions, same semantics."""


def char_ngram_counts(str text, int n):
    """Count all length-n character substrings of `text` (sliding window)."""
    if n <= 0:
        raise ValueError("n must be positive")
    cdef dict counts = {}
    cdef Py_ssize_t i
    cdef Py_ssize_t limit = len(text) - n + 1
    cdef str gram
    for i in range(limit):
        gram = text[i:i + n]
        if gram in counts:
            counts[gram] = <int> counts[gram] + 1
        else:
            counts[gram] = 1
    return counts


def score_log_table(dict counts, dict log_table, double default):
    """Accumulate sum(count * log_table.get(gram, default)) over `counts`."""
    cdef double total = 0.0
    cdef object gram, count, logp
    for gram, count in counts.items():
        logp = log_table.get(gram)
        if logp is None:
            total += <long> count * default
        else:
            total += <long> count * <double> logp
    return total
