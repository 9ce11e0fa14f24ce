from __future__ import annotations

import json
from pathlib import Path

import pytest

from chatguard.corpus.models import LabeledExample
from chatguard.labels import ToxicityLabel

from .stub_api import StubApi

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"


def fixture_json(name: str):
    return json.loads((FIXTURES / name).read_text("utf-8"))


@pytest.fixture
def stub_api():
    api = StubApi()
    yield api
    api.close()


@pytest.fixture
def opendota_stub(stub_api):
    """Stub preloaded with the recorded three-match fixture set."""
    page = fixture_json("public_matches_page.json")

    def public_matches(query):
        if "less_than_match_id" in query:
            cursor = int(query["less_than_match_id"])
            return [m for m in page if m["match_id"] < cursor]
        return page

    stub_api.set("/publicMatches", public_matches)
    for match in page:
        match_id = match["match_id"]
        stub_api.set(f"/matches/{match_id}", fixture_json(f"match_{match_id}.json"))
    return stub_api


def make_example(
    i: int,
    label: ToxicityLabel | None,
    text: str = "",
    annotator: str | None = None,
) -> LabeledExample:
    return LabeledExample(
        id=f"e{i:05d}",
        text=text or f"chat line {i}",
        label=label,
        annotator=annotator,
        labeled_at=None if label is None else 1_754_000_000 + i,
    )


def reference_distribution_corpus() -> list[LabeledExample]:
    """The reference imbalanced distribution used across the suite:
    9,914 non-toxic / 524 mild / 636 toxic."""
    examples = []
    i = 0
    for count, label in (
        (9_914, ToxicityLabel.NON_TOXIC),
        (524, ToxicityLabel.MILD),
        (636, ToxicityLabel.TOXIC),
    ):
        for _ in range(count):
            examples.append(make_example(i, label))
            i += 1
    return examples


@pytest.fixture(scope="session")
def reference_corpus() -> list[LabeledExample]:
    return reference_distribution_corpus()
