"""Socket service that lets exactly one client play a running session.

Threading layout: the session thread owns the Runtime and loops at the
pacing rate, draining the inbound queue once per frame. Each connection
gets a receive loop (the websocket handler thread) plus a sender thread
that watches a latest-wins slot, so a slow client drops frames without
ever stalling the session or losing inputs. HTTP requests that are not
socket upgrades serve the look-image assets and, when configured, the
static player files.
"""

from __future__ import annotations

import io
import logging
import queue
import threading
import time
import urllib.parse
from pathlib import Path

from websockets.datastructures import Headers
from websockets.http11 import Response
from websockets.sync.server import serve

from ..project.model import Project
from . import wire
from .session import Session

log = logging.getLogger("brickvm.gateway")

FRAME_SECONDS = 1.0 / 60.0

_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".mjs": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".map": "application/json",
    ".json": "application/json",
    ".png": "image/png",
    ".svg": "image/svg+xml",
    ".ico": "image/x-icon",
}


class _LatestSlot:
    """Single-frame mailbox: writers overwrite, readers take the newest."""

    def __init__(self):
        self._cond = threading.Condition()
        self._text: str | None = None
        self._version = 0

    def publish(self, text: str) -> None:
        with self._cond:
            self._text = text
            self._version += 1
            self._cond.notify_all()

    def wait_newer(self, seen: int, timeout: float) -> tuple[str, int] | None:
        with self._cond:
            if self._version == seen:
                self._cond.wait(timeout)
            if self._version == seen or self._text is None:
                return None
            return self._text, self._version


def _http_response(status: int, reason: str, body: bytes,
                   content_type: str) -> Response:
    headers = Headers([
        ("Content-Type", content_type),
        ("Content-Length", str(len(body))),
        ("Cache-Control", "no-store"),
    ])
    return Response(status, reason, headers, body)


class GatewayServer:
    def __init__(self, project: Project, host: str = "127.0.0.1",
                 port: int = 8765, seed: int = 0, record=None,
                 player_dir=None, paced: bool = True):
        self.project = project
        self.host = host
        self.port = port
        self.session = Session(project, seed, record=record)
        self.player_dir = Path(player_dir) if player_dir else None
        self.paced = paced
        self._inbound: queue.SimpleQueue = queue.SimpleQueue()
        self._slot = _LatestSlot()
        self._client_lock = threading.Lock()
        self._client_id: int | None = None
        self._next_client_id = 1
        self._stopping = threading.Event()
        self._server = None
        self._threads: list[threading.Thread] = []

    # -- lifecycle -------------------------------------------------------

    def start(self) -> None:
        self._server = serve(self._handle_client, self.host, self.port,
                             process_request=self._process_request)
        if self.port == 0:
            self.port = self._server.socket.getsockname()[1]
        for name, target in (("session", self._session_loop),
                             ("acceptor", self._server.serve_forever)):
            thread = threading.Thread(target=target, name=f"gateway-{name}",
                                      daemon=True)
            thread.start()
            self._threads.append(thread)
        log.info("serving on ws://%s:%d/ws", self.host, self.port)

    def close(self) -> None:
        self._stopping.set()
        if self._server is not None:
            self._server.shutdown()
        for thread in self._threads:
            thread.join(timeout=5)

    def wait(self) -> None:
        """Block until close(); Ctrl-C shuts down instead of raising."""
        try:
            while not self._stopping.is_set():
                time.sleep(0.2)
        except KeyboardInterrupt:
            pass
        finally:
            self.close()

    def serve_forever(self) -> None:
        self.start()
        self.wait()

    @property
    def ws_url(self) -> str:
        return f"ws://{self.host}:{self.port}/ws"

    @property
    def http_url(self) -> str:
        return f"http://{self.host}:{self.port}"

    # -- session thread ----------------------------------------------------

    def _session_loop(self) -> None:
        deadline = time.monotonic()
        while not self._stopping.is_set():
            while True:
                try:
                    entry = self._inbound.get_nowait()
                except queue.Empty:
                    break
                self.session.apply(entry)
            result = self.session.step()
            if result is not None:
                self._slot.publish(
                    wire.encode(wire.frame_message(self.session, result)))
            deadline += FRAME_SECONDS
            if self.paced:
                now = time.monotonic()
                if deadline > now:
                    time.sleep(deadline - now)
                else:
                    deadline = now  # lagging: don't try to catch up
            else:
                deadline = time.monotonic()

    # -- per-connection threads ---------------------------------------------

    def _handle_client(self, ws) -> None:
        with self._client_lock:
            if self._client_id is not None:
                try:
                    ws.send(wire.encode(wire.error_message(
                        "session_busy", "session busy")))
                finally:
                    ws.close()
                return
            client_id = self._next_client_id
            self._next_client_id += 1
            self._client_id = client_id
        log.info("client %d connected", client_id)
        try:
            ws.send(wire.encode(wire.hello_message(self.project)))
            sender = threading.Thread(target=self._send_loop, args=(ws,),
                                      name="gateway-sender", daemon=True)
            sender.start()
            self._receive_loop(ws)
        finally:
            with self._client_lock:
                if self._client_id == client_id:
                    self._client_id = None
            log.info("client %d disconnected", client_id)

    def _receive_loop(self, ws) -> None:
        while not self._stopping.is_set():
            try:
                raw = ws.recv()
            except Exception:
                return
            try:
                entry = wire.normalize_client_message(wire.decode(raw))
            except wire.WireError as exc:
                try:
                    ws.send(wire.encode(wire.error_message(exc.code, exc.text)))
                except Exception:
                    return
                continue
            self._inbound.put(entry)

    def _send_loop(self, ws) -> None:
        seen = 0
        while not self._stopping.is_set():
            newest = self._slot.wait_newer(seen, timeout=0.25)
            if newest is None:
                continue
            text, seen = newest
            try:
                ws.send(text)
            except Exception:
                return

    # -- plain HTTP -------------------------------------------------------

    def _process_request(self, connection, request):
        if request.headers.get("Upgrade", "").lower() == "websocket":
            return None
        path = urllib.parse.unquote(urllib.parse.urlsplit(request.path).path)
        if path.startswith("/assets/"):
            return self._serve_asset(path[len("/assets/"):])
        if self.player_dir is not None:
            return self._serve_static(path)
        if path == "/":
            body = (f"{self.project.header.name}: gateway running; "
                    f"connect a player to {self.ws_url}\n").encode()
            return _http_response(200, "OK", body, "text/plain; charset=utf-8")
        return _http_response(404, "Not Found", b"not found\n",
                              "text/plain; charset=utf-8")

    def _serve_asset(self, rest: str) -> Response:
        parts = rest.split("/")
        if len(parts) != 3:
            return _http_response(404, "Not Found", b"bad asset path\n",
                                  "text/plain; charset=utf-8")
        scene_name, object_name, look_name = parts
        for scene in self.project.scenes:
            if scene.name != scene_name:
                continue
            for obj in scene.objects:
                if obj.name != object_name:
                    continue
                for look in obj.looks:
                    if look.name == look_name:
                        return _http_response(200, "OK", look.data, "image/png")
        return _http_response(404, "Not Found", b"no such look\n",
                              "text/plain; charset=utf-8")

    def _serve_static(self, path: str) -> Response:
        if path == "/":
            path = "/index.html"
        root = self.player_dir.resolve()
        candidate = (root / path.lstrip("/")).resolve()
        if root not in candidate.parents and candidate != root:
            return _http_response(403, "Forbidden", b"forbidden\n",
                                  "text/plain; charset=utf-8")
        if not candidate.is_file():
            return _http_response(404, "Not Found", b"not found\n",
                                  "text/plain; charset=utf-8")
        content_type = _CONTENT_TYPES.get(candidate.suffix,
                                          "application/octet-stream")
        return _http_response(200, "OK", candidate.read_bytes(), content_type)
