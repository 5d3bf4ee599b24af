"""A playable run of one project: state between the wire and the engine.

The session is the single owner of its Runtime. Whoever drives it (the
socket server, the CLI, a replay) applies entries and then asks for a
step; the session never sees wall-clock time, which is what keeps paced
and fast-forward runs byte-identical. Recording writes the applied
entries and the produced frames as JSON lines; feeding that file back
through ``replay_entries`` must reproduce the recorded hash sequence.
"""

from __future__ import annotations

import json

from ..project.model import Project
from ..runtime.engine import start_program, step_frame
from ..runtime.state import FrameResult
from ..sensors.frames import merge_live_input


class ReplayMismatchError(AssertionError):
    """A replayed frame produced a different hash than the record."""


class Session:
    def __init__(self, project: Project, seed: int = 0, record=None):
        self.project = project
        self.seed = seed
        self.rt = start_program(project, seed)
        self.sensors: dict[str, float] = {}
        self.pending: list[dict] = []
        self.last_consumed: list[dict] = []
        self.axes_visible = False
        self.paused = False
        self.stopped = False
        self.step_index = 0
        self._record = record

    @property
    def scene_name(self) -> str:
        return self.project.scenes[self.rt.active_scene_index].name

    def _record_line(self, entry: dict) -> None:
        if self._record is None:
            return
        self._record.write(json.dumps(entry, separators=(",", ":"),
                                      ensure_ascii=False) + "\n")
        self._record.flush()

    def apply(self, entry: dict) -> None:
        """Queue one input event or act on one control, recording it."""
        self._record_line({"step": self.step_index, **entry})
        if entry.get("type") == "control":
            self._control(entry.get("action", ""))
        else:
            self.pending.append(entry)

    def _control(self, action: str) -> None:
        if action in ("start", "resume"):
            self.paused = False
        elif action == "pause":
            self.paused = True
        elif action == "restart":
            self._reset()
            self.paused = False
        elif action == "stop":
            self._reset()
            self.paused = True
            self.stopped = True
        elif action == "toggle_axes":
            self.axes_visible = not self.axes_visible

    def _reset(self) -> None:
        # A restarted run must be indistinguishable from a fresh process:
        # the sensor snapshot and not-yet-consumed inputs go too.
        self.rt = start_program(self.project, self.seed)
        self.sensors = {}
        self.pending = []
        self.last_consumed = []

    def step(self) -> FrameResult | None:
        """Run one frame; None while paused. Consumes all pending input."""
        if self.paused:
            return None
        events = self.pending
        self.pending = []
        for event in events:
            if event.get("type") == "tilt":
                self.sensors["inclination_x"] = max(-90.0, min(90.0, float(event.get("x", 0.0))))
                self.sensors["inclination_y"] = max(-90.0, min(90.0, float(event.get("y", 0.0))))
        inputs = merge_live_input(self.sensors, events)
        result = step_frame(self.rt, inputs)
        self.last_consumed = events
        self._record_line({"step": self.step_index, "type": "frame",
                           "seq": result.frame, "hash": result.hash})
        self.step_index += 1
        return result


def read_timeline(path) -> list[dict]:
    entries = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                entry = json.loads(line)
            except ValueError as exc:
                raise ValueError(f"timeline line {line_no}: {exc}") from exc
            if not isinstance(entry, dict) or "type" not in entry:
                raise ValueError(f"timeline line {line_no}: not an event object")
            entries.append(entry)
    return entries


def replay_entries(project: Project, entries: list[dict], seed: int = 0,
                   verify: bool = True) -> list[FrameResult]:
    """Re-run a recorded session; frames step exactly where the record did."""
    session = Session(project, seed)
    results = []
    for entry in entries:
        if entry.get("type") == "frame":
            session.paused = False  # the record proves a step happened here
            result = session.step()
            if verify and (result.frame != entry.get("seq")
                           or result.hash != entry.get("hash")):
                raise ReplayMismatchError(
                    f"frame {result.frame}: hash {result.hash} != recorded "
                    f"{entry.get('hash')} (seq {entry.get('seq')})")
            results.append(result)
        else:
            session.apply(entry)
    return results


def run_headless(project: Project, entries: list[dict], frames: int,
                 seed: int = 0) -> list[FrameResult]:
    """Step-driven run: entries apply before the step their tag names."""
    by_step: dict[int, list[dict]] = {}
    for entry in entries:
        if entry.get("type") == "frame":
            continue
        by_step.setdefault(int(entry.get("step", 0)), []).append(entry)
    session = Session(project, seed)
    results = []
    for step in range(frames):
        for entry in by_step.get(step, ()):
            session.apply(entry)
        session.paused = False  # headless runs never pause
        results.append(session.step())
    return results
