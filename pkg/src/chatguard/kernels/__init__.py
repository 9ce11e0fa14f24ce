"""Hot inner loops for character n-gram work.

A compiled Cython implementation is preferred when the extension built;
otherwise the pure-Python twin in `_ngram_py` is used. Both expose the same
functions with identical semantics, and `benchmarks/bench_kernels.py`
compares them. `BACKEND` reports which one got selected.
"""

try:
    from chatguard.kernels._ngram_cy import char_ngram_counts, score_log_table

    BACKEND = "native"
except ImportError:  # extension not built; fall back to pure Python
    from chatguard.kernels._ngram_py import char_ngram_counts, score_log_table

    BACKEND = "python"

__all__ = ["char_ngram_counts", "score_log_table", "BACKEND"]
