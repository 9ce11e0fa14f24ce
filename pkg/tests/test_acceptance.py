"""Acceptance gate: every criterion runs at its stated tolerance and prints
one PASS line on success.

Run with `pytest tests/test_acceptance.py -v -s` for the per-criterion lines.
"""

from __future__ import annotations

import hashlib
import math
import random
import threading
import time

import pytest
import requests

from chatguard.annotate.service import make_server
from chatguard.annotate.store import AnnotationStore, AnnotationSubmission
from chatguard.classify.interchange import Prediction
from chatguard.classify.lexicon import classify_lexicon, load_default_lexicon
from chatguard.classify.naive_bayes import predict_nb, train_naive_bayes
from chatguard.corpus.models import UndersamplePolicy
from chatguard.corpus.store import write_corpus
from chatguard.corpus.transforms import compute_distribution, split, undersample_majority
from chatguard.evaluation.metrics import ClassMetrics, EvalReport, build_report
from chatguard.evaluation.report import compare_models, render_report
from chatguard.ingest.client import OpenDotaClient
from chatguard.ingest.models import RateLimitPolicy
from chatguard.ingest.shards import consolidate_shards, run_collection_batch
from chatguard.labels import LABEL_ORDER, ToxicityLabel

from .conftest import GOLDEN, make_example, reference_distribution_corpus
from .synthetic import synthetic_corpus
from .test_metrics import brute_force_eval

NT, M, T = ToxicityLabel.NON_TOXIC, ToxicityLabel.MILD, ToxicityLabel.TOXIC


def report_pass(name: str) -> None:
    print(f"\nACCEPTANCE PASS: {name}")


def test_acceptance_undersampling_arithmetic():
    corpus = reference_distribution_corpus()
    started = time.perf_counter()
    reduced, removed = undersample_majority(corpus, UndersamplePolicy(majority_ratio=1.2, seed=7))
    elapsed = time.perf_counter() - started
    dist = compute_distribution(reduced)
    assert removed == 8_522
    assert dist.total == 2_552
    assert dist.non_toxic == 1_392
    assert (dist.mild, dist.toxic) == (524, 636)
    assert elapsed < 1.0, f"undersampling took {elapsed:.3f}s"
    report_pass(
        "undersampling arithmetic: 11,074 - 8,522 = 2,552 with 1,392 non-toxic "
        f"({elapsed * 1000:.0f} ms)"
    )


def test_acceptance_split_size_and_determinism():
    corpus = reference_distribution_corpus()
    reduced, _ = undersample_majority(corpus, UndersamplePolicy(majority_ratio=1.2, seed=7))
    assert len(reduced) == 2_552
    started = time.perf_counter()
    assignments = [split(reduced, 0.25, seed=42, stratified=True) for _ in range(5)]
    elapsed = time.perf_counter() - started
    first = assignments[0]
    assert len(first.test_ids) == 638
    assert all(a.assignment == first.assignment for a in assignments[1:])
    test_ids = set(first.test_ids)
    for label in LABEL_ORDER:
        class_ids = [e.id for e in reduced if e.label is label]
        share = sum(1 for i in class_ids if i in test_ids)
        assert abs(share - 0.25 * len(class_ids)) <= 1, str(label)
    assert elapsed < 1.0, f"5 splits took {elapsed:.3f}s"
    report_pass(
        f"split size: 638 of 2,552 at 25%, identical across 5 reruns, stratified shares ±1 "
        f"({elapsed * 1000:.0f} ms)"
    )


def test_acceptance_metric_oracle_equivalence():
    rng = random.Random(1_000_003)
    labels = list(LABEL_ORDER)
    started = time.perf_counter()
    for _ in range(1_000):
        n = rng.randint(1, 50)
        pairs = [(rng.choice(labels), rng.choice(labels)) for _ in range(n)]
        gold = [make_example(i, g) for i, (g, _) in enumerate(pairs)]
        preds = [
            Prediction(example_id=f"e{i:05d}", predicted=p, model_name="m")
            for i, (_, p) in enumerate(pairs)
        ]
        report = build_report("m", gold, preds)
        want_per_class, want_acc, want_macro = brute_force_eval(pairs)
        assert math.isclose(report.accuracy, want_acc, rel_tol=0, abs_tol=1e-12)
        for label in LABEL_ORDER:
            got = report.per_class[label]
            for got_value, want_value in zip(
                (got.precision, got.recall, got.f1), want_per_class[label]
            ):
                if want_value is None:
                    assert got_value is None
                else:
                    assert math.isclose(got_value, want_value, rel_tol=0, abs_tol=1e-12)
        if want_macro is None:
            assert report.macro_f1 is None
        else:
            assert math.isclose(report.macro_f1, want_macro, rel_tol=0, abs_tol=1e-12)
    elapsed = time.perf_counter() - started
    assert elapsed < 10.0, f"1,000 oracle comparisons took {elapsed:.2f}s"
    report_pass(
        f"metric oracle equivalence: 1,000 randomized sets match brute force to 1e-12 "
        f"({elapsed:.2f} s)"
    )


def _fixture_report(name, precisions, recalls, f1s, acc):
    per_class = {
        label: ClassMetrics(precision=p, recall=r, f1=f)
        for label, p, r, f in zip(LABEL_ORDER, precisions, recalls, f1s)
    }
    return EvalReport(model_name=name, per_class=per_class, accuracy=acc, macro_f1=sum(f1s) / 3)


def test_acceptance_report_golden_files():
    reports = [
        _fixture_report("BERT (base-uncased)", [0.91, 0.60, 0.70], [0.91, 0.58, 0.72], [0.91, 0.59, 0.71], 0.80),
        _fixture_report("BERT (large-uncased)", [0.93, 0.61, 0.73], [0.93, 0.65, 0.68], [0.93, 0.63, 0.71], 0.82),
        _fixture_report("GPT-3", [0.96, 0.65, 0.71], [0.92, 0.59, 0.80], [0.94, 0.62, 0.75], 0.83),
    ]
    rendered = render_report(reports)
    golden = (GOLDEN / "model_comparison.txt").read_text("utf-8")
    assert rendered == golden, "rendered tables diverge from the golden file"
    assert "0.91" in rendered and "0.93" in rendered and "0.96" in rendered
    ranked = compare_models(reports)
    assert [r.model_name for r in ranked] == [
        "GPT-3",
        "BERT (large-uncased)",
        "BERT (base-uncased)",
    ]
    report_pass("report golden files byte-exact; GPT-3 ranked first")


TAXONOMY_EXAMPLES = [
    ("he scared", NT), ("not about it", NT), ("Took the kill", NT),
    ("free to end", NT), ("stop walking into my spells", NT),
    ("ez the fk", M), ("are you some kind of retard bro", M), ("Wtf rs", M),
    ("i ate a shit ton of broccoli", M), ("you killed me and got 3 level wtf", M),
    ("what a loser", T), ("shut up, stupid boy", T), ("fuck your mother aa", T),
    ("idiot this pudge", T), ("why you tip me unskilled bitch(", T),
]


def test_acceptance_taxonomy_fixture_suite():
    lexicon = load_default_lexicon()
    correct = 0
    failures = []
    for text, expected in TAXONOMY_EXAMPLES:
        got, _ = classify_lexicon(text, lexicon)
        if got is expected:
            correct += 1
        else:
            failures.append((text, expected, got))
    assert correct == 15, f"lexicon misclassified: {failures}"
    report_pass("taxonomy fixture suite: 15/15 example chats classified correctly")


def test_acceptance_baseline_learnability():
    corpus = synthetic_corpus(n_per_class=100)
    assert len(corpus) == 300
    assignment = split(corpus, 0.25, seed=11, stratified=True)
    test_ids = set(assignment.test_ids)
    train = [e for e in corpus if e.id not in test_ids]
    held_out = [e for e in corpus if e.id in test_ids]
    assert len(held_out) == 75
    model = train_naive_bayes(train, alpha=1.0, require_classes=LABEL_ORDER)
    correct = sum(1 for e in held_out if predict_nb(model, e.text).predicted is e.label)
    accuracy = correct / len(held_out)
    majority_label = max(
        LABEL_ORDER, key=lambda label: sum(1 for e in train if e.label is label)
    )
    majority_accuracy = sum(1 for e in held_out if e.label is majority_label) / len(held_out)
    assert accuracy >= 0.90, f"baseline accuracy {accuracy:.3f} below 0.90"
    assert accuracy > majority_accuracy, "baseline does not beat majority class"
    report_pass(
        f"baseline learnability: NB accuracy {accuracy:.3f} >= 0.90 and beats "
        f"majority {majority_accuracy:.3f}"
    )


def test_acceptance_ingestion_determinism(opendota_stub, tmp_path):
    client = OpenDotaClient(
        base_url=opendota_stub.base_url,
        policy=RateLimitPolicy(max_requests_per_minute=10_000, max_retries=4),
        sleep=lambda s: None,
    )
    shard_dir = tmp_path / "shards"
    shard = run_collection_batch(client, 3, shard_dir)
    assert shard.record_count == 7
    first = tmp_path / "one.jsonl"
    second = tmp_path / "two.jsonl"
    consolidate_shards(shard_dir, first)
    consolidate_shards(shard_dir, second)
    digest_one = hashlib.sha256(first.read_bytes()).hexdigest()
    digest_two = hashlib.sha256(second.read_bytes()).hexdigest()
    assert digest_one == digest_two, "consolidation is not byte-deterministic"

    # scripted throttling: two 429s then success, retry counter must read 2
    opendota_stub.enqueue("/publicMatches", 429, {})
    opendota_stub.enqueue("/publicMatches", 429, {})
    throttled = OpenDotaClient(
        base_url=opendota_stub.base_url,
        policy=RateLimitPolicy(max_requests_per_minute=10_000, max_retries=4),
        sleep=lambda s: None,
    )
    page = throttled.fetch_public_matches()
    assert len(page) == 3
    assert throttled.stats.retries == 2
    report_pass(
        "ingestion determinism: consolidation byte-identical twice; "
        "429,429,200 survived with retry count 2"
    )


def test_acceptance_annotation_service_contract(tmp_path):
    corpus_path = tmp_path / "corpus.jsonl"
    write_corpus([make_example(i, None) for i in range(10)], corpus_path)

    # concurrent conflicting submissions over real HTTP: exactly one 200, one 409
    store = AnnotationStore(corpus_path)
    server = make_server(store, port=0)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    base = f"http://127.0.0.1:{server.server_address[1]}"
    try:
        task = requests.get(base + "/api/tasks/next?n=1").json()["tasks"][0]
        statuses: list[int] = []
        barrier = threading.Barrier(2)

        def racer(label: str) -> None:
            barrier.wait()
            resp = requests.post(
                base + "/api/labels",
                json={
                    "example_id": task["example_id"],
                    "label": label,
                    "annotator": "racer",
                    "expected_revision": task["revision"],
                },
            )
            statuses.append(resp.status_code)

        racers = [threading.Thread(target=racer, args=(l,)) for l in ("mild", "toxic")]
        for t in racers:
            t.start()
        for t in racers:
            t.join()
        assert sorted(statuses) == [200, 409], statuses

        stats = requests.get(base + "/api/stats").json()
        assert sum(stats["by_status"].values()) == 10 == stats["corpus_size"]
    finally:
        server.shutdown()
        server.server_close()
        thread.join(timeout=5)

    # crash: submit more labels, abandon the store without flushing
    store.submit(
        AnnotationSubmission("e00005", ToxicityLabel.TOXIC, "crash-test", 0)
    )
    accepted = {
        e_id: store.get_task(e_id).label
        for e_id in ("e00000", "e00005")
    }
    del store  # no flush, no close: the journal is all that survives

    recovered = AnnotationStore(corpus_path)
    for example_id, label in accepted.items():
        assert recovered.get_task(example_id).label is label, example_id
    stats = recovered.progress()
    assert sum(stats.by_status.values()) == stats.corpus_size == 10
    assert stats.by_status["labeled"] == 2
    report_pass(
        "annotation service contract: one 200 + one 409 under race; "
        "restart recovered every accepted label; totals equal corpus size"
    )
