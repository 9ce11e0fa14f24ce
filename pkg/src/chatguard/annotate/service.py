"""HTTP front for the annotation store.

JSON API:
    GET  /api/health                      -> {"status": "ok"}
    GET  /api/tasks/next?n=&strategy=     -> {"tasks": [...]}
    POST /api/labels                      -> task | 404 | 409 | 422
    POST /api/skips                       -> task | 404 | 409 | 422
    GET  /api/stats                       -> progress snapshot

409 bodies carry the server's current task state so clients can reconcile.
The web console bundle, when present, is served statically at /.
"""

from __future__ import annotations

import json
import mimetypes
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from chatguard.annotate.store import (
    AnnotationStore,
    AnnotationSubmission,
    ConflictError,
    NotFoundError,
)
from chatguard.labels import ToxicityLabel

MAX_BODY_BYTES = 1 << 20


class AnnotateHandler(BaseHTTPRequestHandler):
    server_version = "chatguard-annotate"
    store: AnnotationStore  # set by make_server on the handler subclass
    static_dir: Path | None = None
    default_strategy: str = "sequential"
    quiet: bool = True

    def log_message(self, fmt: str, *args) -> None:
        if not self.quiet:
            super().log_message(fmt, *args)

    # -- plumbing ------------------------------------------------------------

    def _send_json(self, status: int, payload: dict) -> None:
        body = json.dumps(payload, ensure_ascii=False).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _read_body(self) -> dict | None:
        length = int(self.headers.get("Content-Length") or 0)
        if length <= 0 or length > MAX_BODY_BYTES:
            return None
        raw = self.rfile.read(length)
        try:
            doc = json.loads(raw.decode("utf-8"))
        except (json.JSONDecodeError, UnicodeDecodeError):
            return None
        return doc if isinstance(doc, dict) else None

    # -- routes ----------------------------------------------------------------

    def do_GET(self) -> None:
        url = urlparse(self.path)
        if url.path == "/api/health":
            self._send_json(200, {"status": "ok"})
        elif url.path == "/api/stats":
            self._send_json(200, self.store.progress().as_dict())
        elif url.path == "/api/tasks/next":
            query = parse_qs(url.query)
            try:
                n = int(query.get("n", ["1"])[0])
                strategy = query.get("strategy", [self.default_strategy])[0]
                tasks = self.store.next_tasks(n, strategy)
            except ValueError as exc:
                self._send_json(422, {"error": str(exc)})
                return
            self._send_json(200, {"tasks": [t.as_dict() for t in tasks]})
        else:
            self._serve_static(url.path)

    def do_POST(self) -> None:
        url = urlparse(self.path)
        if url.path == "/api/labels":
            self._handle_label()
        elif url.path == "/api/skips":
            self._handle_skip()
        else:
            self._send_json(404, {"error": "no such endpoint"})

    def _handle_label(self) -> None:
        doc = self._read_body()
        if doc is None:
            self._send_json(422, {"error": "malformed JSON body"})
            return
        try:
            submission = AnnotationSubmission(
                example_id=str(doc["example_id"]),
                label=ToxicityLabel.parse(str(doc["label"])),
                annotator=str(doc.get("annotator") or "anonymous"),
                expected_revision=int(doc["expected_revision"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            self._send_json(422, {"error": f"invalid submission: {exc}"})
            return
        try:
            task = self.store.submit(submission)
        except NotFoundError as exc:
            self._send_json(404, {"error": str(exc)})
            return
        except ConflictError as exc:
            self._send_json(409, {"error": str(exc), "current": exc.current.as_dict()})
            return
        self._send_json(200, task.as_dict())

    def _handle_skip(self) -> None:
        doc = self._read_body()
        if doc is None:
            self._send_json(422, {"error": "malformed JSON body"})
            return
        try:
            example_id = str(doc["example_id"])
            expected_revision = int(doc["expected_revision"])
            annotator = str(doc.get("annotator") or "anonymous")
        except (KeyError, TypeError, ValueError) as exc:
            self._send_json(422, {"error": f"invalid skip: {exc}"})
            return
        try:
            task = self.store.skip(example_id, expected_revision, annotator)
        except NotFoundError as exc:
            self._send_json(404, {"error": str(exc)})
            return
        except ConflictError as exc:
            self._send_json(409, {"error": str(exc), "current": exc.current.as_dict()})
            return
        self._send_json(200, task.as_dict())

    # -- static hosting --------------------------------------------------------

    def _serve_static(self, path: str) -> None:
        if self.static_dir is None:
            self._send_json(404, {"error": "no web console bundle configured"})
            return
        name = path.lstrip("/") or "index.html"
        target = (self.static_dir / name).resolve()
        root = self.static_dir.resolve()
        if root not in target.parents and target != root:
            self._send_json(404, {"error": "not found"})
            return
        if not target.is_file():
            self._send_json(404, {"error": "not found"})
            return
        content_type = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
        body = target.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)


def make_server(
    store: AnnotationStore,
    port: int = 0,
    host: str = "127.0.0.1",
    static_dir: str | Path | None = None,
    default_strategy: str = "sequential",
    quiet: bool = True,
) -> ThreadingHTTPServer:
    """Build a threaded HTTP server bound to (host, port); port 0 picks a
    free port (read it back from server.server_address)."""
    handler = type(
        "BoundAnnotateHandler",
        (AnnotateHandler,),
        {
            "store": store,
            "static_dir": Path(static_dir) if static_dir else None,
            "default_strategy": default_strategy,
            "quiet": quiet,
        },
    )
    return ThreadingHTTPServer((host, port), handler)
