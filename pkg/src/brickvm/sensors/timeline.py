"""Recorded sensor timelines and frame-time snapshots.

File format: UTF-8 text, one keyframe per line as ``sensor time value mode``
with ``#`` starting a comment. Times are seconds, strictly increasing per
sensor; mode is ``step`` (hold the left keyframe) or ``linear`` and must be
consistent across a sensor's lines.

Snapshots are complete: every sensor the formula language knows gets a
value, zero unless the timeline says otherwise. Before the first keyframe
the first value holds; after the last, the last. Inclination axes clamp to
[-90, 90] degrees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

from ..formula.evaluate import SENSOR_DEFAULTS

FRAME_RATE = 60.0
MODES = ("step", "linear")
_CLAMPED = {"inclination_x": 90.0, "inclination_y": 90.0}


class TimelineError(ValueError):
    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


@dataclass
class SensorTrack:
    mode: str
    keyframes: list[tuple[float, float]] = field(default_factory=list)


@dataclass
class SensorTimeline:
    tracks: dict[str, SensorTrack] = field(default_factory=dict)


def parse_timeline(text: str) -> SensorTimeline:
    timeline = SensorTimeline()
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 4:
            raise TimelineError(line_number,
                                "expected 'sensor time value mode'")
        sensor, time_text, value_text, mode = parts
        if sensor not in SENSOR_DEFAULTS:
            raise TimelineError(line_number, f"unknown sensor {sensor!r}")
        if mode not in MODES:
            raise TimelineError(line_number, f"mode must be one of {MODES}")
        try:
            time = float(time_text)
            value = float(value_text)
        except ValueError:
            raise TimelineError(line_number, "time and value must be numbers")
        if not (math.isfinite(time) and math.isfinite(value)):
            raise TimelineError(line_number, "time and value must be finite")
        track = timeline.tracks.get(sensor)
        if track is None:
            track = timeline.tracks[sensor] = SensorTrack(mode)
        elif track.mode != mode:
            raise TimelineError(
                line_number,
                f"sensor {sensor!r} already uses mode {track.mode!r}")
        if track.keyframes and time <= track.keyframes[-1][0]:
            raise TimelineError(line_number,
                                f"times for {sensor!r} must strictly increase")
        track.keyframes.append((time, value))
    return timeline


def serialize_timeline(timeline: SensorTimeline) -> str:
    lines = []
    for sensor in sorted(timeline.tracks):
        track = timeline.tracks[sensor]
        for time, value in track.keyframes:
            lines.append(f"{sensor} {time!r} {value!r} {track.mode}")
    return "\n".join(lines) + "\n" if lines else ""


def load_timeline(path) -> SensorTimeline:
    return parse_timeline(Path(path).read_text(encoding="utf-8"))


def _track_value(track: SensorTrack, t: float) -> float:
    frames = track.keyframes
    if t <= frames[0][0]:
        return frames[0][1]
    if t >= frames[-1][0]:
        return frames[-1][1]
    for (t0, v0), (t1, v1) in zip(frames, frames[1:]):
        if t0 <= t < t1:
            if track.mode == "step":
                return v0
            return v0 + (v1 - v0) * (t - t0) / (t1 - t0)
    return frames[-1][1]


def snapshot_at(timeline: SensorTimeline, frame_index: int) -> dict[str, float]:
    t = frame_index / FRAME_RATE
    snapshot = dict(SENSOR_DEFAULTS)
    for sensor, track in timeline.tracks.items():
        if track.keyframes:
            snapshot[sensor] = _track_value(track, t)
    for sensor, bound in _CLAMPED.items():
        snapshot[sensor] = max(-bound, min(bound, snapshot[sensor]))
    return snapshot
