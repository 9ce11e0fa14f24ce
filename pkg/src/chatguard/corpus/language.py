"""Character-trigram language filter.

Each supported language ships a normalized trigram frequency table built from
seed text (general prose plus in-game chat phrasing for English, since that
is the register being filtered). A text is scored by smoothed trigram
log-likelihood under every table; the English score reported to callers is
the posterior probability of English under a uniform prior, which lands in
[0, 1] and makes the 0.5 acceptance threshold read as "more likely English
than everything else combined".

Texts shorter than `min_length` after trimming carry too few trigrams to
score, so they short-circuit: accepted iff they contain at least one Latin
letter or digit and nothing outside Latin letters, digits, punctuation, and
spaces (keeps "gg", "ez", "ty"; rejects "привет" and empty strings).
"""

from __future__ import annotations

import json
import math
import string
import unicodedata
from dataclasses import dataclass, field
from importlib import resources

from chatguard.corpus.transforms import normalize_text
from chatguard.kernels import char_ngram_counts, score_log_table

PROFILE_SCHEMA = 1
NGRAM_SIZE = 3

# Mass reserved for trigrams outside a language's table, spread over a
# nominal unseen space. Identical for every language, so unknown trigrams
# never favor one language over another.
UNSEEN_MASS = 0.01
UNSEEN_SPACE = 1e6

_LATIN_OK = set(string.ascii_letters + string.digits + string.punctuation + " ")


@dataclass
class LanguageProfile:
    """Detector state: one trigram table per language plus thresholds."""

    tables: dict[str, dict[str, float]]
    acceptance_threshold: float = 0.5
    min_length: int = 6
    _log_tables: dict[str, dict[str, float]] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if not 0 < self.acceptance_threshold < 1:
            raise ValueError("acceptance_threshold must be in (0, 1)")
        if "en" not in self.tables:
            raise ValueError("profiles must include an 'en' table")
        for lang, table in self.tables.items():
            total = sum(table.values())
            if not math.isclose(total, 1.0, rel_tol=0, abs_tol=1e-6):
                raise ValueError(f"profile {lang!r} frequencies sum to {total}, not 1")
            self._log_tables[lang] = {
                gram: math.log((1.0 - UNSEEN_MASS) * freq) for gram, freq in table.items()
            }

    @property
    def languages(self) -> list[str]:
        return sorted(self.tables)


_UNSEEN_LOGP = math.log(UNSEEN_MASS / UNSEEN_SPACE)


def trigram_counts(text: str) -> dict[str, int]:
    """Trigram counts of the scoring form: lowercased, space-padded."""
    return char_ngram_counts(f" {text.lower()} ", NGRAM_SIZE)


def language_posteriors(text: str, profile: LanguageProfile) -> dict[str, float]:
    """Posterior probability per language under a uniform prior."""
    counts = trigram_counts(normalize_text(text))
    logliks = {
        lang: score_log_table(counts, profile._log_tables[lang], _UNSEEN_LOGP)
        for lang in profile.tables
    }
    peak = max(logliks.values())
    weights = {lang: math.exp(ll - peak) for lang, ll in logliks.items()}
    total = sum(weights.values())
    return {lang: w / total for lang, w in weights.items()}


def _is_plain_latin(text: str) -> bool:
    has_alnum = False
    for ch in text:
        if ch not in _LATIN_OK:
            return False
        if ch.isalnum():
            has_alnum = True
    return has_alnum


def is_english(text: str, profile: LanguageProfile) -> tuple[bool, float]:
    """Decide whether a chat line is English; returns (accepted, score).

    The score is the English posterior in [0, 1]. Short texts use the Latin
    short-circuit rule and report 1.0 or 0.0.
    """
    trimmed = normalize_text(unicodedata.normalize("NFC", text))
    if len(trimmed) < profile.min_length:
        ok = _is_plain_latin(trimmed)
        return ok, 1.0 if ok else 0.0
    score = language_posteriors(trimmed, profile)["en"]
    return score >= profile.acceptance_threshold, score


def load_default_profiles() -> LanguageProfile:
    """Load the trigram tables shipped with the package."""
    raw = resources.files("chatguard.data").joinpath("lang_profiles.json").read_text("utf-8")
    return profile_from_json(raw)


def profile_from_json(raw: str) -> LanguageProfile:
    doc = json.loads(raw)
    if doc.get("schema") != PROFILE_SCHEMA:
        raise ValueError(f"unsupported profile schema: {doc.get('schema')!r}")
    return LanguageProfile(
        tables=doc["profiles"],
        acceptance_threshold=doc.get("acceptance_threshold", 0.5),
        min_length=doc.get("min_length", 6),
    )


def filter_english(examples, profile: LanguageProfile | None = None):
    """Keep only examples whose text passes `is_english`. Deterministic and
    idempotent; output order follows input order."""
    prof = profile or load_default_profiles()
    return [e for e in examples if is_english(e.text, prof)[0]]
