"""Rule-based severity classifier.

Operationalizes the three-class taxonomy as the minimal rule set consistent
with the labeled example chats:

* TOXIC — an insult term co-occurs with a directedness marker (second-person
  pronoun, vocative, imperative, demonstrative) or sits in a person pattern
  ("what a <insult>", insult adjacent to this/that).
* MILD — profane or inappropriate language present but not aimed at anyone.
* NON_TOXIC — nothing matched.

Matching is token-based after lowercasing, punctuation stripping, and a
small leetspeak de-obfuscation pass; phrase entries match contiguous token
runs. Exclusion phrases suppress matches they fully contain.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from chatguard.corpus.transforms import normalize_text
from chatguard.labels import ToxicityLabel

_SECTIONS = ("profanity", "insults", "directedness", "exclusions")

_LEET = str.maketrans({"0": "o", "1": "i", "3": "e", "4": "a", "5": "s", "7": "t", "$": "s", "@": "a"})

# Bigrams that mark the following insult as aimed at a person.
_PERSON_BIGRAMS = (("what", "a"), ("such", "a"))
_DEMONSTRATIVES = frozenset({"this", "that"})


@dataclass(frozen=True)
class SeverityLexicon:
    profanity: frozenset[str]
    insults: frozenset[str]
    directedness: frozenset[str]
    exclusions: frozenset[str]

    def __post_init__(self) -> None:
        for name in _SECTIONS:
            entries = getattr(self, name)
            bad = [e for e in entries if e != e.lower() or not e.strip()]
            if bad:
                raise ValueError(f"[{name}] entries must be non-empty lowercase: {bad}")
        active = self.profanity | self.insults | self.directedness
        overlap = active & self.exclusions
        if overlap:
            raise ValueError(f"entries cannot be both active and excluded: {sorted(overlap)}")


def _tokenize(text: str) -> list[str]:
    tokens = []
    for raw in normalize_text(text).lower().split():
        token = raw.strip(string.punctuation)
        if token:
            tokens.append(token)
    return tokens


def _phrase_spans(tokens: list[str], phrases: set[str]) -> list[tuple[int, int, str]]:
    """(start, end, entry) for every phrase whose token run appears."""
    spans = []
    split_phrases = [(tuple(p.split()), p) for p in phrases]
    for words, entry in split_phrases:
        size = len(words)
        for i in range(len(tokens) - size + 1):
            if tuple(tokens[i : i + size]) == words:
                spans.append((i, i + size, entry))
    return spans


def _match_set(tokens: list[str], entries: frozenset[str]) -> list[tuple[int, int, str]]:
    """Match single tokens (raw and de-leeted) plus multi-word phrases."""
    singles = {e for e in entries if " " not in e}
    phrases = {e for e in entries if " " in e}
    spans = []
    for i, token in enumerate(tokens):
        if token in singles:
            spans.append((i, i + 1, token))
        else:
            plain = token.translate(_LEET)
            if plain != token and plain in singles:
                spans.append((i, i + 1, plain))
    spans.extend(_phrase_spans(tokens, phrases))
    return spans


def classify_lexicon(
    text: str, lexicon: SeverityLexicon
) -> tuple[ToxicityLabel, list[str]]:
    """Classify one chat line; returns (label, matched lexicon entries)."""
    tokens = _tokenize(text)
    excluded = _phrase_spans(tokens, set(lexicon.exclusions))

    def keep(span: tuple[int, int, str]) -> bool:
        return not any(span[0] >= lo and span[1] <= hi for lo, hi, _ in excluded)

    profanity = [s for s in _match_set(tokens, lexicon.profanity) if keep(s)]
    insults = [s for s in _match_set(tokens, lexicon.insults) if keep(s)]
    markers = [s for s in _match_set(tokens, lexicon.directedness) if keep(s)]

    directed_insults = []
    if insults:
        if markers:
            directed_insults = insults
        else:
            for start, end, entry in insults:
                before = tuple(tokens[max(0, start - 2) : start])
                if before in _PERSON_BIGRAMS:
                    directed_insults.append((start, end, entry))
                    continue
                neighbors = set(tokens[max(0, start - 1) : start]) | set(tokens[end : end + 1])
                if neighbors & _DEMONSTRATIVES:
                    directed_insults.append((start, end, entry))

    if directed_insults:
        matched = directed_insults + markers
        rationale = _entries(matched) or _entries(insults)
        return ToxicityLabel.TOXIC, rationale
    if profanity or insults:
        return ToxicityLabel.MILD, _entries(profanity + insults)
    return ToxicityLabel.NON_TOXIC, []


def _entries(spans: list[tuple[int, int, str]]) -> list[str]:
    seen: list[str] = []
    for _, _, entry in sorted(spans):
        if entry not in seen:
            seen.append(entry)
    return seen


def parse_lexicon(raw: str, where: str = "<lexicon>") -> SeverityLexicon:
    """Parse the plain-text lexicon format: [section] headers, one lowercase
    entry per line, `#` comments and blanks ignored."""
    sections: dict[str, set[str]] = {name: set() for name in _SECTIONS}
    current: str | None = None
    for line_no, line in enumerate(raw.splitlines(), start=1):
        entry = line.split("#", 1)[0].strip()
        if not entry:
            continue
        if entry.startswith("[") and entry.endswith("]"):
            name = entry[1:-1].strip()
            if name not in sections:
                raise ValueError(f"{where} line {line_no}: unknown section [{name}]")
            current = name
            continue
        if current is None:
            raise ValueError(f"{where} line {line_no}: entry before any [section]")
        sections[current].add(entry.lower())
    return SeverityLexicon(
        profanity=frozenset(sections["profanity"]),
        insults=frozenset(sections["insults"]),
        directedness=frozenset(sections["directedness"]),
        exclusions=frozenset(sections["exclusions"]),
    )


def load_lexicon(path: str | Path) -> SeverityLexicon:
    return parse_lexicon(Path(path).read_text("utf-8"), str(path))


def load_default_lexicon() -> SeverityLexicon:
    raw = resources.files("chatguard.data").joinpath("lexicon.txt").read_text("utf-8")
    return parse_lexicon(raw, "chatguard.data/lexicon.txt")
