"""The compiled and pure-Python kernels must be interchangeable."""

from __future__ import annotations

import math

from hypothesis import given
from hypothesis import strategies as st

import chatguard.kernels as kernels
from chatguard.kernels import _ngram_py


def test_counts_basic():
    assert _ngram_py.char_ngram_counts("abcab", 2) == {"ab": 2, "bc": 1, "ca": 1}


def test_counts_short_text():
    assert _ngram_py.char_ngram_counts("ab", 3) == {}
    assert _ngram_py.char_ngram_counts("", 3) == {}


def test_score_log_table_uses_default_for_unknown():
    counts = {"abc": 2, "zzz": 1}
    table = {"abc": -1.0}
    got = _ngram_py.score_log_table(counts, table, -5.0)
    assert math.isclose(got, 2 * -1.0 + 1 * -5.0)


@given(st.text(max_size=60), st.integers(min_value=1, max_value=4))
def test_selected_backend_matches_reference(text, n):
    assert kernels.char_ngram_counts(text, n) == _ngram_py.char_ngram_counts(text, n)


@given(
    st.dictionaries(st.text(min_size=1, max_size=4), st.integers(min_value=1, max_value=9), max_size=8),
    st.dictionaries(st.text(min_size=1, max_size=4), st.floats(min_value=-20, max_value=0), max_size=8),
)
def test_score_parity(counts, table):
    got = kernels.score_log_table(counts, table, -11.5)
    want = _ngram_py.score_log_table(counts, table, -11.5)
    assert math.isclose(got, want, rel_tol=1e-12, abs_tol=1e-12)


def test_backend_reports_which_impl_loaded():
    assert kernels.BACKEND in ("native", "python")
