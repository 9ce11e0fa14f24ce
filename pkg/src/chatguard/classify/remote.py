"""Client for a remotely hosted completion-style model.

The fine-tuned hosted model is a black box behind an HTTP endpoint: each
example is rendered through the prompt template (matching the corpus
export's conventions, so the model is queried the way it was trained),
posted, and the returned completion is parsed back to a label — trimmed,
case-insensitive, prefix-matched. Failures are isolated per example; one
bad completion never sinks the batch.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import requests

from chatguard.classify.interchange import Prediction
from chatguard.corpus.export import PromptTemplate
from chatguard.corpus.models import LabeledExample
from chatguard.errors import ChatguardError, UnparseableCompletion
from chatguard.ingest.client import RateLimiter
from chatguard.labels import ToxicityLabel

DEFAULT_LABEL_MAP = {
    "non-toxic": ToxicityLabel.NON_TOXIC,
    "mild": ToxicityLabel.MILD,
    "toxic": ToxicityLabel.TOXIC,
}


@dataclass(frozen=True)
class RemoteModelConfig:
    endpoint: str
    auth_env: str | None = "CHATGUARD_REMOTE_TOKEN"
    model: str = "gpt-3"
    template: PromptTemplate = PromptTemplate()
    label_map: dict[str, ToxicityLabel] = field(default_factory=lambda: dict(DEFAULT_LABEL_MAP))
    timeout_ms: int = 30_000
    max_retries: int = 3

    def __post_init__(self) -> None:
        if self.timeout_ms <= 0:
            raise ValueError("timeout_ms must be > 0")
        covered = set(self.label_map.values())
        if covered != set(ToxicityLabel):
            raise ValueError(f"label_map must cover all three labels, covers {covered}")

    def resolve_token(self) -> str | None:
        if self.auth_env is None:
            return None
        token = os.environ.get(self.auth_env)
        if not token:
            raise ChatguardError(
                f"remote auth token env var {self.auth_env} is not set"
            )
        return token


@dataclass(frozen=True)
class RemoteFailure:
    example_id: str
    reason: str
    raw: str | None = None

    def as_row(self) -> dict:
        row = {"id": self.example_id, "reason": self.reason}
        if self.raw is not None:
            row["raw"] = self.raw
        return row


def parse_completion(raw: str, label_map: dict[str, ToxicityLabel]) -> ToxicityLabel:
    """Trimmed, case-insensitive, longest-prefix match against the map."""
    cleaned = raw.strip().lower()
    for key in sorted(label_map, key=len, reverse=True):
        if cleaned.startswith(key):
            return label_map[key]
    raise UnparseableCompletion("", raw)


def remote_classify(
    config: RemoteModelConfig,
    examples: list[LabeledExample],
    *,
    session: requests.Session | None = None,
    limiter: RateLimiter | None = None,
    max_parallel: int = 4,
    sleep: Callable[[float], None] = time.sleep,
    rng: random.Random | None = None,
) -> tuple[list[Prediction], list[RemoteFailure]]:
    """Classify a batch against the remote endpoint.

    Returns (predictions, failures); output order follows input order.
    Retries 429s and transport timeouts with jittered exponential backoff up
    to `max_retries` per example, then records a failure and moves on.
    """
    sess = session or requests.Session()
    token = config.resolve_token()
    headers = {"Authorization": f"Bearer {token}"} if token else {}
    rand = rng or random.Random()
    timeout = config.timeout_ms / 1000.0

    def classify_one(example: LabeledExample) -> Prediction | RemoteFailure:
        body = {
            "model": config.model,
            "prompt": example.text + config.template.prompt_suffix,
            "max_tokens": 8,
            "temperature": 0,
        }
        attempt = 0
        while True:
            if limiter is not None:
                limiter.acquire()
            try:
                resp = sess.post(config.endpoint, json=body, headers=headers, timeout=timeout)
            except requests.RequestException as exc:
                if attempt >= config.max_retries:
                    return RemoteFailure(example.id, f"transport: {exc}")
                attempt += 1
                sleep(rand.uniform(0, min(30.0, 0.5 * 2 ** (attempt - 1))))
                continue
            if resp.status_code == 429:
                if attempt >= config.max_retries:
                    return RemoteFailure(example.id, "rate limited past retry budget")
                attempt += 1
                sleep(rand.uniform(0, min(30.0, 0.5 * 2 ** (attempt - 1))))
                continue
            if not resp.ok:
                return RemoteFailure(example.id, f"http {resp.status_code}")
            try:
                completion = resp.json()["choices"][0]["text"]
            except (ValueError, KeyError, IndexError) as exc:
                return RemoteFailure(example.id, f"malformed response: {exc}")
            try:
                label = parse_completion(completion, config.label_map)
            except UnparseableCompletion:
                return RemoteFailure(example.id, "unparseable completion", raw=completion)
            return Prediction(example_id=example.id, predicted=label, model_name=config.model)

    if not examples:
        return [], []
    workers = max(1, min(max_parallel, len(examples)))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        outcomes = list(pool.map(classify_one, examples))

    predictions = [o for o in outcomes if isinstance(o, Prediction)]
    failures = [o for o in outcomes if isinstance(o, RemoteFailure)]
    return predictions, failures
