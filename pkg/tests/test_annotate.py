from __future__ import annotations

import json
import threading

import pytest
import requests

from chatguard.annotate.service import make_server
from chatguard.annotate.store import (
    AnnotationStore,
    AnnotationSubmission,
    ConflictError,
    NotFoundError,
)
from chatguard.corpus.store import read_corpus, write_corpus
from chatguard.labels import ToxicityLabel

from .conftest import make_example


def fresh_corpus(tmp_path, n=10):
    path = tmp_path / "corpus.jsonl"
    write_corpus([make_example(i, None) for i in range(n)], path)
    return path


def submission(example_id, label=ToxicityLabel.MILD, revision=0, annotator="ann"):
    return AnnotationSubmission(
        example_id=example_id, label=label, annotator=annotator, expected_revision=revision
    )


# -- store ---------------------------------------------------------------------


def test_submit_labels_and_increments_revision(tmp_path):
    store = AnnotationStore(fresh_corpus(tmp_path))
    task = store.submit(submission("e00000"))
    assert task.status == "labeled"
    assert task.revision == 1
    assert task.label is ToxicityLabel.MILD


def test_stale_revision_conflicts_with_current_state(tmp_path):
    store = AnnotationStore(fresh_corpus(tmp_path))
    store.submit(submission("e00000", ToxicityLabel.MILD))
    with pytest.raises(ConflictError) as excinfo:
        store.submit(submission("e00000", ToxicityLabel.TOXIC, revision=0))
    assert excinfo.value.current.revision == 1
    assert excinfo.value.current.label is ToxicityLabel.MILD


def test_idempotent_resubmission_is_noop(tmp_path):
    store = AnnotationStore(fresh_corpus(tmp_path))
    first = store.submit(submission("e00000", ToxicityLabel.MILD))
    again = store.submit(submission("e00000", ToxicityLabel.MILD, revision=0))
    assert again.revision == first.revision == 1


def test_unknown_id(tmp_path):
    store = AnnotationStore(fresh_corpus(tmp_path))
    with pytest.raises(NotFoundError):
        store.submit(submission("nope"))


def test_next_tasks_sequential(tmp_path):
    store = AnnotationStore(fresh_corpus(tmp_path, n=5))
    tasks = store.next_tasks(3, "sequential")
    assert [t.example_id for t in tasks] == ["e00000", "e00001", "e00002"]


def test_next_tasks_empty_when_done(tmp_path):
    store = AnnotationStore(fresh_corpus(tmp_path, n=2))
    store.submit(submission("e00000"))
    store.submit(submission("e00001"))
    assert store.next_tasks(5) == []


def test_next_tasks_random_reproducible_per_session(tmp_path):
    path = fresh_corpus(tmp_path, n=20)
    first = [t.example_id for t in AnnotationStore(path, session_seed=3).next_tasks(20, "random")]
    second = [t.example_id for t in AnnotationStore(path, session_seed=3).next_tasks(20, "random")]
    assert first == second
    assert first != sorted(first)


def test_disagreement_first(tmp_path):
    path = tmp_path / "corpus.jsonl"
    write_corpus(
        [make_example(i, None, text) for i, text in enumerate(
            ["calm line", "what a loser", "another calm", "you idiot", "more calm",
             "gg", "wp", "nice", "good", "fine"]
        )],
        path,
    )
    flagged = {"what a loser", "you idiot"}
    store = AnnotationStore(path, disagreement_fn=lambda text: text in flagged)
    tasks = store.next_tasks(4, "disagreement")
    assert [t.example_id for t in tasks][:2] == ["e00001", "e00003"]


def test_disagreement_first_with_real_backends(tmp_path):
    from chatguard.classify.lexicon import classify_lexicon, load_default_lexicon
    from chatguard.classify.naive_bayes import predict_nb, train_naive_bayes

    from .synthetic import synthetic_corpus

    lexicon = load_default_lexicon()
    nb = train_naive_bayes(synthetic_corpus(n_per_class=50))
    texts = [
        "gg wp nice game", "care top they rotate", "rip that fight",
        "ward the rune pls", "smoke and go", "good play well done",
        "report mid pls", "what a loser team", "uninstall pls noob",
        "so useless this dog",
    ]
    path = tmp_path / "corpus.jsonl"
    write_corpus([make_example(i, None, t) for i, t in enumerate(texts)], path)

    def disagrees(text: str) -> bool:
        return classify_lexicon(text, lexicon)[0] is not predict_nb(nb, text).predicted

    expected_first = [f"e{i:05d}" for i, t in enumerate(texts) if disagrees(t)]
    assert 0 < len(expected_first) < len(texts)  # fixture must actually split

    store = AnnotationStore(path, disagreement_fn=disagrees)
    ordered = [t.example_id for t in store.next_tasks(len(texts), "disagreement")]
    assert ordered[: len(expected_first)] == expected_first


def test_skip_marks_and_excludes(tmp_path):
    store = AnnotationStore(fresh_corpus(tmp_path, n=3))
    task = store.skip("e00000", 0)
    assert task.status == "skipped"
    assert [t.example_id for t in store.next_tasks(5)] == ["e00001", "e00002"]
    stats = store.progress()
    assert stats.by_status == {"unlabeled": 2, "labeled": 0, "skipped": 1}


def test_tasks_carry_match_context(tmp_path):
    from chatguard.corpus.models import LabeledExample

    path = tmp_path / "corpus.jsonl"
    examples = [
        LabeledExample(id=f"m1e{i}", text=f"match one line {i}", source=(1, i))
        for i in range(5)
    ] + [LabeledExample(id="m2e0", text="other match", source=(2, 0))]
    write_corpus(examples, path)
    store = AnnotationStore(path)
    task = store.get_task("m1e2")
    # neighbors within two event indexes, same match only
    assert set(task.context) == {
        "match one line 0", "match one line 1", "match one line 3", "match one line 4",
    }
    assert store.get_task("m2e0").context == []


def test_progress_reference_scale_distribution(tmp_path):
    from .conftest import reference_distribution_corpus

    path = tmp_path / "reference.jsonl"
    write_corpus(reference_distribution_corpus(), path)
    stats = AnnotationStore(path).progress()
    assert stats.by_status["labeled"] == 11_074
    assert stats.distribution.as_dict() == {
        "non-toxic": 9_914, "mild": 524, "toxic": 636, "total": 11_074,
    }
    assert sum(stats.by_status.values()) == stats.corpus_size == 11_074


def test_progress_totals_and_distribution(tmp_path):
    store = AnnotationStore(fresh_corpus(tmp_path, n=10))
    stats = store.progress()
    assert stats.by_status["unlabeled"] == 10
    assert stats.distribution.total == 0
    store.submit(submission("e00000", ToxicityLabel.NON_TOXIC))
    store.submit(submission("e00001", ToxicityLabel.MILD, annotator="bee"))
    store.submit(submission("e00002", ToxicityLabel.TOXIC))
    stats = store.progress()
    assert stats.distribution.as_dict() == {"non-toxic": 1, "mild": 1, "toxic": 1, "total": 3}
    assert sum(stats.by_status.values()) == stats.corpus_size == 10
    assert stats.by_annotator == {"ann": 2, "bee": 1}


def test_crash_recovery_from_journal(tmp_path):
    path = fresh_corpus(tmp_path)
    store = AnnotationStore(path)
    store.submit(submission("e00003", ToxicityLabel.TOXIC))
    store.submit(submission("e00005", ToxicityLabel.NON_TOXIC))
    # no flush/close: simulate a crash by abandoning the instance
    recovered = AnnotationStore(path)
    assert recovered.get_task("e00003").label is ToxicityLabel.TOXIC
    assert recovered.get_task("e00003").revision == 1
    assert recovered.get_task("e00005").label is ToxicityLabel.NON_TOXIC
    assert recovered.progress().by_status["labeled"] == 2


def test_flush_compacts_into_corpus_file(tmp_path):
    path = fresh_corpus(tmp_path)
    store = AnnotationStore(path)
    store.submit(submission("e00001", ToxicityLabel.MILD))
    store.flush()
    assert not any(line.strip() for line in store.journal_path.read_text().splitlines())
    reloaded = read_corpus(path)
    by_id = {e.id: e for e in reloaded}
    assert by_id["e00001"].label is ToxicityLabel.MILD
    assert by_id["e00001"].annotator == "ann"


def test_concurrent_conflicting_submissions_exactly_one_wins(tmp_path):
    results = []
    for round_no in range(20):  # repeated rounds to shake out races
        round_dir = tmp_path / f"round{round_no}"
        round_dir.mkdir()
        store = AnnotationStore(fresh_corpus(round_dir, n=1))
        target = store.next_tasks(1)[0]
        outcomes = []
        barrier = threading.Barrier(2)

        def writer(label):
            barrier.wait()
            try:
                store.submit(submission(target.example_id, label, revision=target.revision))
                outcomes.append("ok")
            except ConflictError:
                outcomes.append("conflict")

        threads = [
            threading.Thread(target=writer, args=(ToxicityLabel.MILD,)),
            threading.Thread(target=writer, args=(ToxicityLabel.TOXIC,)),
        ]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        results.append(sorted(outcomes))
    assert all(r == ["conflict", "ok"] for r in results)


# -- HTTP service -----------------------------------------------------------------


@pytest.fixture
def service(tmp_path):
    store = AnnotationStore(fresh_corpus(tmp_path))
    server = make_server(store, port=0)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    base = f"http://127.0.0.1:{server.server_address[1]}"
    yield base, store
    server.shutdown()
    server.server_close()
    thread.join(timeout=5)


def test_health(service):
    base, _ = service
    resp = requests.get(base + "/api/health")
    assert resp.status_code == 200
    assert resp.json() == {"status": "ok"}


def test_task_label_round_trip(service):
    base, _ = service
    tasks = requests.get(base + "/api/tasks/next?n=2&strategy=sequential").json()["tasks"]
    assert len(tasks) == 2
    task = tasks[0]
    resp = requests.post(
        base + "/api/labels",
        json={
            "example_id": task["example_id"],
            "label": "mild",
            "annotator": "web",
            "expected_revision": task["revision"],
        },
    )
    assert resp.status_code == 200
    assert resp.json()["status"] == "labeled"
    assert resp.json()["revision"] == 1
    stats = requests.get(base + "/api/stats").json()
    assert stats["distribution"]["mild"] == 1


def test_conflict_is_409_with_current_state(service):
    base, _ = service
    task = requests.get(base + "/api/tasks/next?n=1").json()["tasks"][0]
    body = {
        "example_id": task["example_id"],
        "label": "toxic",
        "annotator": "a",
        "expected_revision": task["revision"],
    }
    assert requests.post(base + "/api/labels", json=body).status_code == 200
    second = requests.post(base + "/api/labels", json={**body, "label": "mild"})
    assert second.status_code == 409
    assert second.json()["current"]["revision"] == 1


def test_unknown_id_is_404(service):
    base, _ = service
    resp = requests.post(
        base + "/api/labels",
        json={"example_id": "nope", "label": "mild", "annotator": "a", "expected_revision": 0},
    )
    assert resp.status_code == 404


def test_invalid_label_is_422(service):
    base, _ = service
    resp = requests.post(
        base + "/api/labels",
        json={"example_id": "e00000", "label": "severe", "annotator": "a", "expected_revision": 0},
    )
    assert resp.status_code == 422


def test_malformed_body_is_422(service):
    base, _ = service
    resp = requests.post(
        base + "/api/labels", data=b"{not json", headers={"Content-Type": "application/json"}
    )
    assert resp.status_code == 422


def test_skip_endpoint(service):
    base, _ = service
    task = requests.get(base + "/api/tasks/next?n=1").json()["tasks"][0]
    resp = requests.post(
        base + "/api/skips",
        json={"example_id": task["example_id"], "expected_revision": task["revision"]},
    )
    assert resp.status_code == 200
    assert resp.json()["status"] == "skipped"


def test_concurrent_http_conflict_one_success_one_409(service):
    base, _ = service
    task = requests.get(base + "/api/tasks/next?n=1").json()["tasks"][0]
    statuses = []
    barrier = threading.Barrier(2)

    def poster(label):
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

    threads = [threading.Thread(target=poster, args=(l,)) for l in ("mild", "toxic")]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert sorted(statuses) == [200, 409]


def test_static_hosting(tmp_path):
    static = tmp_path / "static"
    static.mkdir()
    (static / "index.html").write_text("<html><body>console</body></html>", "utf-8")
    store = AnnotationStore(fresh_corpus(tmp_path))
    server = make_server(store, port=0, static_dir=static)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    base = f"http://127.0.0.1:{server.server_address[1]}"
    try:
        resp = requests.get(base + "/")
        assert resp.status_code == 200
        assert "console" in resp.text
        assert requests.get(base + "/../etc/passwd").status_code == 404
        assert requests.get(base + "/missing.js").status_code == 404
    finally:
        server.shutdown()
        server.server_close()
        thread.join(timeout=5)
