"""Deterministic device-sensor stand-ins: timelines, snapshots, live input."""

from .frames import FrameInputs, merge_live_input
from .timeline import (
    SensorTimeline,
    SensorTrack,
    TimelineError,
    load_timeline,
    parse_timeline,
    serialize_timeline,
    snapshot_at,
)

__all__ = [
    "FrameInputs",
    "SensorTimeline",
    "SensorTrack",
    "TimelineError",
    "load_timeline",
    "merge_live_input",
    "parse_timeline",
    "serialize_timeline",
    "snapshot_at",
]
