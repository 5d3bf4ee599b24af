"""One-line-per-frame textual log for debugging and replay comparison."""

from __future__ import annotations

import json

from .state import FrameResult


def format_frame_line(result: FrameResult) -> str:
    events = json.dumps(result.events, sort_keys=True,
                        separators=(",", ":"), ensure_ascii=False)
    return f"frame={result.frame} hash={result.hash} events={events}"
