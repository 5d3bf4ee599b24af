"""Sensor timelines: parsing, interpolation, live-input precedence."""

import random

import pytest

from brickvm.formula.evaluate import SENSOR_DEFAULTS
from brickvm.sensors import (
    SensorTimeline,
    SensorTrack,
    TimelineError,
    merge_live_input,
    parse_timeline,
    serialize_timeline,
    snapshot_at,
)

EXAMPLE = """
# maze run: tilt right then back
inclination_x 0 0 linear
inclination_x 1 30 linear
compass_direction 0 90 step
compass_direction 2 180 step
"""


def test_empty_timeline_gives_all_zero_snapshot():
    snapshot = snapshot_at(SensorTimeline(), 123)
    assert snapshot == {sensor: 0.0 for sensor in SENSOR_DEFAULTS}


def test_linear_midpoint():
    timeline = parse_timeline(EXAMPLE)
    assert snapshot_at(timeline, 30)["inclination_x"] == 15.0


def test_step_holds_left_value():
    timeline = parse_timeline(EXAMPLE)
    assert snapshot_at(timeline, 60)["compass_direction"] == 90.0
    assert snapshot_at(timeline, 119)["compass_direction"] == 90.0
    assert snapshot_at(timeline, 120)["compass_direction"] == 180.0


def test_values_hold_beyond_the_ends():
    timeline = parse_timeline(EXAMPLE)
    assert snapshot_at(timeline, 0)["inclination_x"] == 0.0
    assert snapshot_at(timeline, 600)["inclination_x"] == 30.0


def test_snapshot_is_pure():
    timeline = parse_timeline(EXAMPLE)
    assert snapshot_at(timeline, 45) == snapshot_at(timeline, 45)


def test_inclination_clamped_to_90_degrees():
    timeline = parse_timeline("inclination_y 0 250 step")
    assert snapshot_at(timeline, 10)["inclination_y"] == 90.0
    timeline = parse_timeline("inclination_y 0 -250 step")
    assert snapshot_at(timeline, 10)["inclination_y"] == -90.0


def test_parse_errors_carry_line_numbers():
    for text, line in (
        ("inclination_x 0 0", 1),                     # missing mode
        ("warp_factor 0 0 step", 1),                  # unknown sensor
        ("inclination_x 0 0 cubic", 1),               # unknown mode
        ("inclination_x zero 0 step", 1),             # bad number
        ("inclination_x 0 inf step", 1),              # non-finite
        ("inclination_x 1 0 step\ninclination_x 1 5 step", 2),  # not increasing
        ("inclination_x 0 0 step\ninclination_x 1 5 linear", 2),  # mode flip
    ):
        with pytest.raises(TimelineError) as err:
            parse_timeline(text)
        assert err.value.line_number == line


def test_comments_and_blank_lines_ignored():
    timeline = parse_timeline("# nothing\n\nloudness 0 40 step  # trailing\n")
    assert snapshot_at(timeline, 0)["loudness"] == 40.0


def test_timeline_roundtrip():
    rng = random.Random(12)
    timeline = SensorTimeline()
    for sensor in ("inclination_x", "loudness", "altitude", "face_size"):
        mode = rng.choice(("step", "linear"))
        track = SensorTrack(mode)
        t = 0.0
        for _ in range(rng.randint(1, 5)):
            track.keyframes.append((t, rng.uniform(-100, 100)))
            t += rng.uniform(0.25, 2.0)
        timeline.tracks[sensor] = track
    text = serialize_timeline(timeline)
    assert parse_timeline(text) == timeline
    assert serialize_timeline(parse_timeline(text)) == text


def test_live_tilt_overrides_timeline():
    timeline = parse_timeline("inclination_x 0 30 step\ninclination_y 0 30 step")
    snapshot = snapshot_at(timeline, 10)
    inputs = merge_live_input(snapshot, [{"type": "tilt", "x": 5, "y": -5}])
    assert inputs.sensors["inclination_x"] == 5.0
    assert inputs.sensors["inclination_y"] == -5.0
    assert inputs.sensors["loudness"] == 0.0


def test_no_live_events_passes_snapshot_through():
    snapshot = snapshot_at(parse_timeline(EXAMPLE), 30)
    inputs = merge_live_input(snapshot, [])
    assert inputs.sensors == snapshot
    assert inputs.taps == [] and inputs.keys == [] and inputs.answers == []


def test_tap_appears_once():
    inputs = merge_live_input(snapshot_at(SensorTimeline(), 0),
                              [{"type": "tap", "x": 100, "y": 200}])
    assert inputs.taps == [(100.0, 200.0)]


def test_live_tilt_is_clamped():
    inputs = merge_live_input(snapshot_at(SensorTimeline(), 0),
                              [{"type": "tilt", "x": 400, "y": -400}])
    assert inputs.sensors["inclination_x"] == 90.0
    assert inputs.sensors["inclination_y"] == -90.0


def test_unknown_live_events_are_ignored():
    inputs = merge_live_input(snapshot_at(SensorTimeline(), 0),
                              [{"type": "shake"}, {"type": "answer",
                                                   "id": 2, "text": "ok"}])
    assert inputs.answers == [(2, "ok")]
