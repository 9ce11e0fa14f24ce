"""Uniform backend wrappers so `predict_corpus` can drive any classifier."""

from __future__ import annotations

from dataclasses import dataclass, field

from chatguard.classify.interchange import Prediction
from chatguard.classify.lexicon import SeverityLexicon, classify_lexicon
from chatguard.classify.naive_bayes import NaiveBayesModel, predict_nb
from chatguard.classify.remote import RemoteModelConfig, remote_classify
from chatguard.corpus.models import LabeledExample
from chatguard.ingest.client import RateLimiter


@dataclass
class LexiconBackend:
    lexicon: SeverityLexicon
    name: str = "lexicon"

    def predict_batch(self, examples: list[LabeledExample]) -> tuple[list[Prediction], list[dict]]:
        predictions = [
            Prediction(
                example_id=e.id,
                predicted=classify_lexicon(e.text, self.lexicon)[0],
                model_name=self.name,
            )
            for e in examples
        ]
        return predictions, []


@dataclass
class NaiveBayesBackend:
    model: NaiveBayesModel
    name: str = "nb"

    def __post_init__(self) -> None:
        self.name = self.model.model_name

    def predict_batch(self, examples: list[LabeledExample]) -> tuple[list[Prediction], list[dict]]:
        return [predict_nb(self.model, e.text, e.id) for e in examples], []


@dataclass
class RemoteBackend:
    config: RemoteModelConfig
    limiter: RateLimiter | None = None
    max_parallel: int = 4
    extra: dict = field(default_factory=dict)  # session/sleep/rng overrides for tests

    @property
    def name(self) -> str:
        return self.config.model

    def predict_batch(self, examples: list[LabeledExample]) -> tuple[list[Prediction], list[dict]]:
        predictions, failures = remote_classify(
            self.config,
            examples,
            limiter=self.limiter,
            max_parallel=self.max_parallel,
            **self.extra,
        )
        return predictions, [f.as_row() for f in failures]
