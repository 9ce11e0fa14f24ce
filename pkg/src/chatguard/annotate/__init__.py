from chatguard.annotate.store import (
    AnnotationStore,
    AnnotationSubmission,
    AnnotationTask,
    ConflictError,
    NotFoundError,
    ProgressStats,
)
from chatguard.annotate.service import make_server

__all__ = [
    "AnnotationStore",
    "AnnotationSubmission",
    "AnnotationTask",
    "ConflictError",
    "NotFoundError",
    "ProgressStats",
    "make_server",
]
