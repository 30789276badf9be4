"""Local HTTP service exposing mutate / classify / seed to the explorer UI.

Stateless JSON-over-HTTP on stdlib http.server; every response carries a
format version field "v".  Session state (history, undo) belongs to the
client.  Optionally serves a static directory so the browser client can be
opened from the same origin.
"""

from __future__ import annotations

import json
import mimetypes
import os
import posixpath
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse

from .classify import classify
from .core import Quiver, QuiverError, from_matrix, mutate, seed
from .enumeration import ClassRegistry


class ServiceError(ValueError):
    pass


def _verdict_payload(verdict) -> dict:
    cert = None
    if verdict.certificate is not None:
        cert = {
            "roles": {str(v): r for v, r in sorted(verdict.certificate.roles.items())},
            "motif_edges": [list(e) for e in verdict.certificate.motif_edges],
        }
    payload = {
        "v": 1,
        "family": verdict.family,
        "subtype": verdict.subtype,
        "certificate": cert,
        "method": verdict.method,
    }
    if verdict.matched is not None:
        payload["matched"] = {"family": verdict.matched[0], "n": verdict.matched[1]}
    if verdict.note:
        payload["note"] = verdict.note
    return payload


def _parse_matrix(obj) -> Quiver:
    if not isinstance(obj, dict) or "matrix" not in obj:
        raise ServiceError("body must be a JSON object with a 'matrix' field")
    try:
        return from_matrix(obj["matrix"])
    except (QuiverError, TypeError) as exc:
        raise ServiceError(f"bad matrix: {exc}") from exc


class QuiverRequestHandler(BaseHTTPRequestHandler):
    server_version = "quiverlab/1"

    def log_message(self, fmt, *args):  # quiet by default; tests capture nothing
        if getattr(self.server, "verbose", False):
            super().log_message(fmt, *args)

    # -- helpers ------------------------------------------------------------

    def _send_json(self, obj, status: int = 200) -> None:
        data = json.dumps(obj).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(data)

    def _send_error_json(self, message: str, status: int = 400) -> None:
        self._send_json({"v": 1, "error": message}, status)

    def _read_body(self):
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b"{}"
        try:
            return json.loads(raw.decode() or "{}")
        except (ValueError, UnicodeDecodeError) as exc:
            raise ServiceError(f"bad JSON body: {exc}") from exc

    # -- routes -------------------------------------------------------------

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()

    def do_GET(self):
        url = urlparse(self.path)
        if url.path == "/health":
            self._send_json({"v": 1, "status": "ok"})
            return
        if url.path == "/seed":
            qs = parse_qs(url.query)
            try:
                family = qs.get("family", [""])[0]
                n = int(qs.get("n", ["0"])[0])
                orient = int(qs.get("orient", ["1"])[0])
                q = seed(family, n, orient)
            except (QuiverError, ValueError) as exc:
                self._send_error_json(str(exc))
                return
            self._send_json({"v": 1, "matrix": q.matrix(), "family": family, "n": n})
            return
        if self._serve_static(url.path):
            return
        self._send_error_json(f"no such endpoint: GET {url.path}", 404)

    def do_POST(self):
        url = urlparse(self.path)
        try:
            if url.path == "/mutate":
                body = self._read_body()
                q = _parse_matrix(body)
                vertex = body.get("vertex")
                if not isinstance(vertex, int) or not 0 <= vertex < q.n:
                    raise ServiceError(f"vertex must be an integer in 0..{q.n - 1}")
                self._send_json({"v": 1, "matrix": mutate(q, vertex).matrix()})
                return
            if url.path == "/classify":
                q = _parse_matrix(self._read_body())
                verdict = classify(q, getattr(self.server, "registry", None))
                self._send_json(_verdict_payload(verdict))
                return
        except ServiceError as exc:
            self._send_error_json(str(exc))
            return
        self._send_error_json(f"no such endpoint: POST {url.path}", 404)

    def _serve_static(self, path: str) -> bool:
        root = getattr(self.server, "static_dir", None)
        if not root:
            return False
        rel = posixpath.normpath(path.lstrip("/")) or "index.html"
        if rel == ".":
            rel = "index.html"
        full = os.path.join(root, rel)
        if not os.path.normpath(full).startswith(os.path.normpath(root)):
            return False
        if os.path.isdir(full):
            full = os.path.join(full, "index.html")
        if not os.path.isfile(full):
            return False
        ctype = mimetypes.guess_type(full)[0] or "application/octet-stream"
        with open(full, "rb") as fh:
            data = fh.read()
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)
        return True


def make_server(
    registry: ClassRegistry | None = None,
    host: str = "127.0.0.1",
    port: int = 8787,
    static_dir: str | None = None,
    verbose: bool = False,
) -> ThreadingHTTPServer:
    server = ThreadingHTTPServer((host, port), QuiverRequestHandler)
    server.registry = registry
    server.static_dir = static_dir
    server.verbose = verbose
    return server


def serve(registry=None, host="127.0.0.1", port=8787, static_dir=None) -> None:
    """Run until interrupted."""
    server = make_server(registry, host, port, static_dir, verbose=True)
    try:
        server.serve_forever()
    finally:
        server.server_close()
