"""Message vocabulary of the frame-stream protocol, version 1.

Every message is one JSON object sent as a UTF-8 text frame over the
socket stream. Server to client: ``hello``, ``frame``, ``error``.
Client to server: ``input`` (kinds tap, tilt, key, answer) and
``control`` (actions start, pause, resume, restart, toggle_axes, stop).
Client messages normalize into the flat event dicts the sensor layer
and timeline files share, so a recorded session replays through the
same code path that served it.
"""

from __future__ import annotations

import json

PROTOCOL_VERSION = 1

CONTROL_ACTIONS = ("start", "pause", "resume", "restart", "toggle_axes", "stop")
INPUT_KINDS = ("tap", "tilt", "key", "answer")


class WireError(ValueError):
    """A message the protocol cannot accept; the connection survives it."""

    def __init__(self, code: str, text: str):
        super().__init__(text)
        self.code = code
        self.text = text


def encode(message: dict) -> str:
    return json.dumps(message, separators=(",", ":"), ensure_ascii=False)


def decode(text) -> dict:
    try:
        message = json.loads(text)
    except (TypeError, ValueError):
        raise WireError("bad_message", "message is not valid JSON") from None
    if not isinstance(message, dict):
        raise WireError("bad_message", "message must be a JSON object")
    return message


def error_message(code: str, text: str) -> dict:
    return {"type": "error", "code": code, "text": text}


def hello_message(project) -> dict:
    return {
        "type": "hello",
        "protocol_version": PROTOCOL_VERSION,
        "project_name": project.header.name,
        "stage_width": project.header.stage_width,
        "stage_height": project.header.stage_height,
    }


def frame_message(session, result) -> dict:
    return {
        "type": "frame",
        "seq": result.frame,
        "hash": result.hash,
        "scene": session.scene_name,
        "display": result.display,
        "events": result.events,
        "pen_segments": result.pen_segments,
        "pen_stamps": result.pen_stamps,
        "watched": result.watched,
        "consumed_inputs": session.last_consumed,
        "axes_visible": session.axes_visible,
    }


def _require_number(message: dict, key: str) -> float:
    value = message.get(key, 0)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise WireError("bad_message", f"input field {key!r} must be a number")
    return float(value)


def normalize_client_message(message: dict) -> dict:
    """Validate a client message into a flat timeline entry.

    Unknown extra keys (client tags) ride along untouched; they come
    back in the frame's consumed-input echo.
    """
    if not isinstance(message, dict):
        raise WireError("bad_message", "message must be a JSON object")
    kind = message.get("type")
    if kind == "control":
        action = message.get("action")
        if action not in CONTROL_ACTIONS:
            raise WireError("bad_message", f"unknown control action {action!r}")
        return {"type": "control", "action": action}
    if kind != "input":
        raise WireError("bad_message", f"unknown message type {kind!r}")

    input_kind = message.get("kind")
    if input_kind not in INPUT_KINDS:
        raise WireError("bad_message", f"unknown input kind {input_kind!r}")
    entry = {key: value for key, value in message.items()
             if key not in ("type", "kind")}
    entry["type"] = input_kind
    if input_kind in ("tap", "tilt"):
        entry["x"] = _require_number(message, "x")
        entry["y"] = _require_number(message, "y")
    elif input_kind == "key":
        entry["key"] = str(message.get("key", ""))
    else:
        entry["id"] = int(_require_number(message, "id"))
        entry["text"] = str(message.get("text", ""))
    return entry
