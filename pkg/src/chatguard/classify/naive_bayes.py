"""Multinomial naive Bayes baseline over word unigrams + character 3-grams.

Chat lines are short and creatively misspelled, so character n-grams carry
most of the signal; word unigrams catch the stable vocabulary. Features are
namespaced ("w:" / "c:") so the two spaces cannot collide. Likelihoods are
Laplace-smoothed with `alpha`, reserving one extra slot of smoothing mass
for tokens never seen in training: for each class the probabilities over
vocabulary + unseen sum to exactly 1.

Training stores integer counts, not floats, so a model serializes byte-
identically across runs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from chatguard.classify.interchange import Prediction, choose_label
from chatguard.corpus.models import LabeledExample
from chatguard.errors import IncompleteLabelsError, ModelFormatError, TrainingError
from chatguard.kernels import char_ngram_counts
from chatguard.labels import LABEL_ORDER, ToxicityLabel

MODEL_SCHEMA = 1


@dataclass(frozen=True)
class TokenizerConfig:
    lowercase: bool = True
    word_unigrams: bool = True
    char_ngram: int = 3  # 0 disables character features

    def features(self, text: str) -> dict[str, int]:
        if self.lowercase:
            text = text.lower()
        feats: dict[str, int] = {}
        if self.word_unigrams:
            for word in text.split():
                key = "w:" + word
                feats[key] = feats.get(key, 0) + 1
        if self.char_ngram > 0:
            padded = " " + " ".join(text.split()) + " "
            for gram, count in char_ngram_counts(padded, self.char_ngram).items():
                key = "c:" + gram
                feats[key] = feats.get(key, 0) + count
        return feats


@dataclass
class NaiveBayesModel:
    alpha: float
    tokenizer: TokenizerConfig
    class_counts: dict[ToxicityLabel, int]
    feature_counts: dict[ToxicityLabel, dict[str, int]]
    model_name: str = "nb"
    _vocabulary: set[str] = field(default_factory=set, repr=False)

    def __post_init__(self) -> None:
        if not self._vocabulary:
            for table in self.feature_counts.values():
                self._vocabulary.update(table)

    @property
    def classes(self) -> list[ToxicityLabel]:
        return [label for label in LABEL_ORDER if label in self.class_counts]

    def log_prior(self, label: ToxicityLabel) -> float:
        return math.log(self.class_counts[label] / sum(self.class_counts.values()))

    def log_likelihood(self, label: ToxicityLabel, feature: str) -> float:
        """Smoothed log P(feature | class); unknown features share one
        vocabulary slot of pure smoothing mass."""
        table = self.feature_counts[label]
        total = sum(table.values())
        count = table.get(feature, 0) if feature in self._vocabulary else 0
        denom = total + self.alpha * (len(self._vocabulary) + 1)
        return math.log((count + self.alpha) / denom)


def train_naive_bayes(
    corpus: list[LabeledExample],
    alpha: float = 1.0,
    tokenizer: TokenizerConfig = TokenizerConfig(),
    require_classes: tuple[ToxicityLabel, ...] | None = None,
) -> NaiveBayesModel:
    """Count-and-smooth training. Deterministic: same corpus and alpha give
    an identical model.

    `require_classes` makes absent classes a hard error; by default the
    model covers whatever classes the corpus contains (a one-class corpus
    yields a degenerate prior of 1.0).
    """
    if alpha <= 0:
        raise ValueError("alpha must be > 0")
    missing = [e.id for e in corpus if e.label is None]
    if missing:
        raise IncompleteLabelsError(missing)
    if not corpus:
        raise TrainingError("cannot train on an empty corpus")

    class_counts: dict[ToxicityLabel, int] = {}
    feature_counts: dict[ToxicityLabel, dict[str, int]] = {}
    for example in corpus:
        label = example.label
        class_counts[label] = class_counts.get(label, 0) + 1
        table = feature_counts.setdefault(label, {})
        for feature, count in tokenizer.features(example.text).items():
            table[feature] = table.get(feature, 0) + count

    if require_classes:
        absent = [str(label) for label in require_classes if label not in class_counts]
        if absent:
            raise TrainingError(f"training corpus has no examples of: {', '.join(absent)}")
    return NaiveBayesModel(
        alpha=alpha,
        tokenizer=tokenizer,
        class_counts=class_counts,
        feature_counts=feature_counts,
    )


def predict_nb(model: NaiveBayesModel, text: str, example_id: str = "") -> Prediction:
    """Posterior over the model's classes; scores sum to 1."""
    feats = model.tokenizer.features(text)
    log_posts = {}
    for label in model.classes:
        total = model.log_prior(label)
        for feature, count in feats.items():
            total += count * model.log_likelihood(label, feature)
        log_posts[label] = total
    peak = max(log_posts.values())
    weights = {label: math.exp(lp - peak) for label, lp in log_posts.items()}
    norm = sum(weights.values())
    scores = {label: w / norm for label, w in weights.items()}
    return Prediction(
        example_id=example_id,
        predicted=choose_label(scores),
        model_name=model.model_name,
        scores=scores,
    )


def save_model(model: NaiveBayesModel, path: str | Path) -> None:
    doc = {
        "schema": MODEL_SCHEMA,
        "kind": "naive-bayes",
        "alpha": model.alpha,
        "model_name": model.model_name,
        "tokenizer": {
            "lowercase": model.tokenizer.lowercase,
            "word_unigrams": model.tokenizer.word_unigrams,
            "char_ngram": model.tokenizer.char_ngram,
        },
        "classes": {str(label): count for label, count in model.class_counts.items()},
        "features": {
            str(label): dict(sorted(table.items()))
            for label, table in model.feature_counts.items()
        },
    }
    Path(path).write_text(json.dumps(doc, ensure_ascii=False, sort_keys=True) + "\n", "utf-8")


def load_model(path: str | Path) -> NaiveBayesModel:
    try:
        doc = json.loads(Path(path).read_text("utf-8"))
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"{path}: not a model file ({exc})") from exc
    if doc.get("schema") != MODEL_SCHEMA or doc.get("kind") != "naive-bayes":
        raise ModelFormatError(
            f"{path}: expected naive-bayes schema {MODEL_SCHEMA}, "
            f"found kind={doc.get('kind')!r} schema={doc.get('schema')!r}"
        )
    tok = doc["tokenizer"]
    return NaiveBayesModel(
        alpha=doc["alpha"],
        tokenizer=TokenizerConfig(
            lowercase=tok["lowercase"],
            word_unigrams=tok["word_unigrams"],
            char_ngram=tok["char_ngram"],
        ),
        class_counts={ToxicityLabel.parse(k): v for k, v in doc["classes"].items()},
        feature_counts={
            ToxicityLabel.parse(k): table for k, table in doc["features"].items()
        },
        model_name=doc.get("model_name", "nb"),
    )
