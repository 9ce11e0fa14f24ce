from chatguard.evaluation.metrics import (
    ClassMetrics,
    ConfusionMatrix,
    EvalReport,
    accuracy,
    build_report,
    confusion_matrix,
    macro_f1,
    normalize_matrix,
    one_vs_rest,
    per_class_metrics,
)
from chatguard.evaluation.report import compare_models, render_report

__all__ = [
    "ClassMetrics",
    "ConfusionMatrix",
    "EvalReport",
    "confusion_matrix",
    "per_class_metrics",
    "one_vs_rest",
    "accuracy",
    "macro_f1",
    "normalize_matrix",
    "build_report",
    "render_report",
    "compare_models",
]
