"""Minimal HTTP/JSON session service for the advisor UI.

Endpoints (all JSON):

* ``POST /api/session`` with ``{"floors": n, "balls": k}`` -> 201 envelope
* ``GET /api/session/{id}`` -> envelope
* ``POST /api/session/{id}/report`` with ``{"floor": f, "outcome": "broke"|"survived"}``
* ``DELETE /api/session/{id}`` -> 204

The envelope is ``{"id", "state", "next_probe", "result"}``; ``next_probe``
is null once the session stops being active. Anything under a different
path is served from ``static_dir`` (the advisor UI bundle).

Sessions live in memory only and expire after ``idle_timeout`` seconds
without being touched. Each session mutates under its own lock; distinct
sessions proceed independently.
"""

from __future__ import annotations

import json
import logging
import mimetypes
import os
import threading
import time
import uuid
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .errors import InfeasibleError, ProbeRejectedError
from .output import result_to_json, state_to_json
from .strategy import (
    SearchState,
    SessionStatus,
    apply_outcome,
    next_probe,
    start_session,
)

log = logging.getLogger(__name__)

DEFAULT_IDLE_TIMEOUT = 3600.0


@dataclass
class SessionRecord:
    id: str
    state: SearchState
    created_at: float
    last_used: float
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    """In-memory session registry with lazy idle expiry."""

    def __init__(self, idle_timeout: float = DEFAULT_IDLE_TIMEOUT, clock=time.monotonic):
        self.idle_timeout = idle_timeout
        self._clock = clock
        self._records: dict[str, SessionRecord] = {}
        self._lock = threading.RLock()

    def sweep(self) -> None:
        now = self._clock()
        with self._lock:
            stale = [
                key
                for key, record in self._records.items()
                if now - record.last_used > self.idle_timeout
            ]
            for key in stale:
                del self._records[key]

    def create(self, floors: int, balls: int) -> SessionRecord:
        state = start_session(floors, balls)
        now = self._clock()
        record = SessionRecord(
            id=uuid.uuid4().hex, state=state, created_at=now, last_used=now
        )
        with self._lock:
            self._records[record.id] = record
        return record

    def get(self, session_id: str) -> SessionRecord | None:
        self.sweep()
        with self._lock:
            record = self._records.get(session_id)
            if record is not None:
                record.last_used = self._clock()
            return record

    def delete(self, session_id: str) -> bool:
        with self._lock:
            return self._records.pop(session_id, None) is not None

    def __len__(self) -> int:
        with self._lock:
            return len(self._records)


def session_envelope(record: SessionRecord) -> dict:
    state = record.state
    probe = next_probe(state) if state.status is SessionStatus.ACTIVE else None
    return {
        "id": record.id,
        "state": state_to_json(state),
        "next_probe": probe,
        "result": result_to_json(state.result),
    }


class ProbeServiceHandler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"

    # -- helpers ------------------------------------------------------------

    def _send_json(self, status: int, payload) -> None:
        body = json.dumps(payload).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_error_json(self, status: int, message: str) -> None:
        self._send_json(status, {"error": message})

    def _read_body(self):
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        if not raw:
            return None, "empty body"
        try:
            parsed = json.loads(raw)
        except json.JSONDecodeError:
            return None, "body is not valid JSON"
        if not isinstance(parsed, dict):
            return None, "body must be a JSON object"
        return parsed, None

    def _route(self):
        """-> ("create"|"session"|"report"|"static", session_id | path)."""
        path = self.path.split("?", 1)[0]
        if not path.startswith("/api/"):
            return "static", path
        parts = [p for p in path.split("/") if p]
        if parts[:2] == ["api", "session"]:
            if len(parts) == 2:
                return "create", None
            if len(parts) == 3:
                return "session", parts[2]
            if len(parts) == 4 and parts[3] == "report":
                return "report", parts[2]
        return "unknown", path

    @property
    def store(self) -> SessionStore:
        return self.server.store

    # -- verbs --------------------------------------------------------------

    def do_POST(self):
        kind, session_id = self._route()
        if kind == "create":
            return self._create_session()
        if kind == "report":
            return self._report(session_id)
        self._send_error_json(404, "not found")

    def do_GET(self):
        kind, arg = self._route()
        if kind == "session":
            record = self.store.get(arg)
            if record is None:
                return self._send_error_json(404, "unknown session")
            with record.lock:
                return self._send_json(200, session_envelope(record))
        if kind == "static":
            return self._serve_static(arg)
        self._send_error_json(404, "not found")

    def do_DELETE(self):
        kind, session_id = self._route()
        if kind != "session":
            return self._send_error_json(404, "not found")
        if not self.store.delete(session_id):
            return self._send_error_json(404, "unknown session")
        self.send_response(204)
        self.send_header("Content-Length", "0")
        self.end_headers()

    # -- endpoint bodies ----------------------------------------------------

    def _create_session(self):
        self.store.sweep()
        body, problem = self._read_body()
        if body is None:
            return self._send_error_json(400, problem)
        floors = body.get("floors")
        balls = body.get("balls")
        if not _is_count(floors) or not _is_count(balls):
            return self._send_error_json(
                400, "floors and balls must be non-negative integers"
            )
        try:
            record = self.store.create(floors, balls)
        except InfeasibleError as exc:
            return self._send_error_json(400, str(exc))
        with record.lock:
            self._send_json(201, session_envelope(record))

    def _report(self, session_id: str):
        record = self.store.get(session_id)
        if record is None:
            return self._send_error_json(404, "unknown session")
        body, problem = self._read_body()
        if body is None:
            return self._send_error_json(400, problem)
        floor = body.get("floor")
        outcome = body.get("outcome")
        if not _is_count(floor) or outcome not in ("broke", "survived"):
            return self._send_error_json(
                400, 'report needs an integer floor and outcome "broke"|"survived"'
            )
        with record.lock:
            if record.state.status is not SessionStatus.ACTIVE:
                return self._send_error_json(409, "session is not active")
            try:
                apply_outcome(record.state, floor, outcome)
            except ProbeRejectedError as exc:
                return self._send_error_json(409, str(exc))
            self._send_json(200, session_envelope(record))

    def _serve_static(self, path: str):
        static_dir = self.server.static_dir
        if static_dir is None:
            return self._send_error_json(404, "no static content configured")
        root = os.path.realpath(static_dir)
        relative = path.lstrip("/") or "index.html"
        candidate = os.path.realpath(os.path.join(root, relative))
        if os.path.isdir(candidate):
            candidate = os.path.join(candidate, "index.html")
        if not candidate.startswith(root + os.sep) and candidate != root:
            return self._send_error_json(404, "not found")
        if not os.path.isfile(candidate):
            return self._send_error_json(404, "not found")
        content_type = mimetypes.guess_type(candidate)[0] or "application/octet-stream"
        with open(candidate, "rb") as handle:
            data = handle.read()
        self.send_response(200)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def log_message(self, fmt, *args):  # quiet by default; use logging instead
        log.debug("%s - %s", self.address_string(), fmt % args)


def _is_count(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool) and value >= 0


class ProbeServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address, store: SessionStore, static_dir: str | None):
        super().__init__(address, ProbeServiceHandler)
        self.store = store
        self.static_dir = static_dir


def make_server(
    host: str = "127.0.0.1",
    port: int = 0,
    static_dir: str | None = None,
    idle_timeout: float = DEFAULT_IDLE_TIMEOUT,
) -> ProbeServer:
    store = SessionStore(idle_timeout=idle_timeout)
    return ProbeServer((host, port), store, static_dir)


def serve_forever(
    host: str,
    port: int,
    static_dir: str | None,
    idle_timeout: float = DEFAULT_IDLE_TIMEOUT,
) -> None:
    server = make_server(host, port, static_dir, idle_timeout)
    actual_host, actual_port = server.server_address[:2]
    # flush so supervisors (and the frontend tests) see the port immediately
    print(f"serving on http://{actual_host}:{actual_port}/ (Ctrl-C to stop)", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
