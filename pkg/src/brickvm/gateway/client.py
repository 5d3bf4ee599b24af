"""Scripted client for tests and recordings; speaks protocol version 1."""

from __future__ import annotations

from websockets.sync.client import connect

from . import wire


class SessionBusyError(ConnectionError):
    pass


class GatewayClient:
    def __init__(self, url: str, timeout: float = 5.0):
        self.ws = connect(url, open_timeout=timeout)
        self.timeout = timeout
        self.hello: dict | None = None

    def __enter__(self) -> "GatewayClient":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def close(self) -> None:
        try:
            self.ws.close()
        except Exception:
            pass

    def recv_message(self, timeout: float | None = None) -> dict:
        raw = self.ws.recv(timeout=self.timeout if timeout is None else timeout)
        return wire.decode(raw)

    def expect_hello(self) -> dict:
        """First server message: hello, or an error such as session busy."""
        message = self.recv_message()
        if message.get("type") == "error":
            if message.get("code") == "session_busy":
                raise SessionBusyError(message.get("text", "session busy"))
            raise ConnectionError(message.get("text", "refused"))
        if message.get("type") != "hello":
            raise ConnectionError(f"expected hello, got {message.get('type')!r}")
        self.hello = message
        return message

    def next_frame(self, timeout: float | None = None) -> dict:
        while True:
            message = self.recv_message(timeout)
            if message.get("type") == "frame":
                return message

    def frame_after(self, seq: int, timeout: float | None = None) -> dict:
        while True:
            frame = self.next_frame(timeout)
            if frame["seq"] > seq:
                return frame

    def send_input(self, kind: str, **payload) -> None:
        self.ws.send(wire.encode({"type": "input", "kind": kind, **payload}))

    def send_tap(self, x: float, y: float, **extra) -> None:
        self.send_input("tap", x=x, y=y, **extra)

    def send_tilt(self, x: float, y: float, **extra) -> None:
        self.send_input("tilt", x=x, y=y, **extra)

    def send_key(self, key: str, **extra) -> None:
        self.send_input("key", key=key, **extra)

    def send_answer(self, ask_id: int, text: str, **extra) -> None:
        self.send_input("answer", id=ask_id, text=text, **extra)

    def send_control(self, action: str) -> None:
        self.ws.send(wire.encode({"type": "control", "action": action}))

    def send_raw(self, text: str) -> None:
        self.ws.send(text)
