"""One frame's worth of input: sensor values plus discrete events.

Precedence is total: live input > timeline snapshot > sensor default. Live
events arrive as wire-shaped dicts; unknown event types are ignored here so
the gateway can grow without touching this module. Key presses carry no
behavior in the language yet, but they are kept so sessions echo them for
replay.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class FrameInputs:
    sensors: dict[str, float] = field(default_factory=dict)
    taps: list[tuple[float, float]] = field(default_factory=list)
    keys: list[str] = field(default_factory=list)
    answers: list[tuple[int, str]] = field(default_factory=list)


def merge_live_input(snapshot: dict[str, float], live_events) -> FrameInputs:
    inputs = FrameInputs(sensors=dict(snapshot))
    for event in live_events:
        kind = event.get("type")
        if kind == "tilt":
            x = max(-90.0, min(90.0, float(event.get("x", 0.0))))
            y = max(-90.0, min(90.0, float(event.get("y", 0.0))))
            inputs.sensors["inclination_x"] = x
            inputs.sensors["inclination_y"] = y
        elif kind == "tap":
            inputs.taps.append((float(event.get("x", 0.0)),
                                float(event.get("y", 0.0))))
        elif kind == "key":
            inputs.keys.append(str(event.get("key", "")))
        elif kind == "answer":
            inputs.answers.append((int(event.get("id", 0)),
                                   str(event.get("text", ""))))
    return inputs
