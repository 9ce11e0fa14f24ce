from __future__ import annotations

import pytest

from chatguard.evaluation.metrics import ClassMetrics, ConfusionMatrix, EvalReport
from chatguard.evaluation.report import (
    compare_models,
    format_metric,
    render_report,
)
from chatguard.labels import ToxicityLabel as L

from .conftest import GOLDEN

CLASS_ORDER = [L.NON_TOXIC, L.MILD, L.TOXIC]


def fixture_report(name, precisions, recalls, f1s, acc):
    per_class = {
        label: ClassMetrics(precision=p, recall=r, f1=f)
        for label, p, r, f in zip(CLASS_ORDER, precisions, recalls, f1s)
    }
    return EvalReport(model_name=name, per_class=per_class, accuracy=acc, macro_f1=sum(f1s) / 3)


@pytest.fixture(scope="module")
def fixture_reports():
    return [
        fixture_report("BERT (base-uncased)", [0.91, 0.60, 0.70], [0.91, 0.58, 0.72], [0.91, 0.59, 0.71], 0.80),
        fixture_report("BERT (large-uncased)", [0.93, 0.61, 0.73], [0.93, 0.65, 0.68], [0.93, 0.63, 0.71], 0.82),
        fixture_report("GPT-3", [0.96, 0.65, 0.71], [0.92, 0.59, 0.80], [0.94, 0.62, 0.75], 0.83),
    ]


def test_golden_comparison_table(fixture_reports):
    golden = (GOLDEN / "model_comparison.txt").read_text("utf-8")
    assert render_report(fixture_reports) == golden


def test_golden_single_model(fixture_reports):
    golden = (GOLDEN / "single_model.txt").read_text("utf-8")
    assert render_report(fixture_reports[2:]) == golden


def test_render_byte_stable(fixture_reports):
    assert render_report(fixture_reports) == render_report(fixture_reports)


def test_ranking_puts_gpt3_first(fixture_reports):
    ranked = compare_models(fixture_reports)
    assert [r.model_name for r in ranked] == [
        "GPT-3",
        "BERT (large-uncased)",
        "BERT (base-uncased)",
    ]


def test_ranking_tie_broken_by_macro_f1():
    a = fixture_report("alpha", [0.9] * 3, [0.9] * 3, [0.9] * 3, 0.8)
    b = fixture_report("beta", [0.7] * 3, [0.7] * 3, [0.7] * 3, 0.8)
    assert [r.model_name for r in compare_models([b, a])] == ["alpha", "beta"]


def test_ranking_full_tie_breaks_lexicographically():
    a = fixture_report("same-a", [0.9] * 3, [0.9] * 3, [0.9] * 3, 0.8)
    b = fixture_report("same-b", [0.9] * 3, [0.9] * 3, [0.9] * 3, 0.8)
    assert [r.model_name for r in compare_models([b, a])] == ["same-a", "same-b"]


def test_half_up_rounding():
    assert format_metric(0.825) == "0.83"
    assert format_metric(0.005) == "0.01"
    assert format_metric(1.0) == "1.00"
    assert format_metric(None) == "—"


def test_undefined_metric_renders_as_dash():
    report = EvalReport(
        model_name="m",
        per_class={
            L.NON_TOXIC: ClassMetrics(1.0, 1.0, 1.0),
            L.MILD: ClassMetrics(None, None, None),
            L.TOXIC: ClassMetrics(0.5, 0.5, 0.5),
        },
        accuracy=0.75,
        macro_f1=0.75,
    )
    text = render_report([report])
    assert "—" in text


def test_normalized_matrix_rendering():
    from chatguard.classify.interchange import Prediction
    from chatguard.evaluation.metrics import build_report
    from chatguard.evaluation.report import render_report

    from .conftest import make_example

    # gold has no toxic examples: that row renders zeroed and flagged
    pairs = [(L.NON_TOXIC, L.NON_TOXIC)] * 3 + [(L.MILD, L.NON_TOXIC)] + [(L.MILD, L.MILD)]
    gold = [make_example(i, g) for i, (g, _) in enumerate(pairs)]
    preds = [
        Prediction(example_id=f"e{i:05d}", predicted=p, model_name="m")
        for i, (_, p) in enumerate(pairs)
    ]
    report = build_report("m", gold, preds)
    text = render_report([report], include_matrices=True)
    assert "normalized confusion matrix" in text
    assert "(empty)" in text  # the all-zero toxic row is flagged
    assert "1.00" in text  # non-toxic row normalizes to 1.0 in its own cell


def test_report_json_round_trip(fixture_reports):
    report = fixture_reports[0]
    report.matrix = ConfusionMatrix.from_rows([[5, 1, 0], [1, 3, 1], [0, 1, 4]])
    back = EvalReport.from_json(report.to_json())
    assert back.model_name == report.model_name
    assert back.accuracy == report.accuracy
    assert back.per_class == report.per_class
    assert back.matrix.cells == report.matrix.cells
