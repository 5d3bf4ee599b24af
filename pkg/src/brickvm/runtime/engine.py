"""Frame-stepped interpreter.

One frame: apply inputs (answers wake asks, taps schedule hats for the
next frame), fire hats scheduled last frame, advance glides, release
broadcast waits whose receivers finished, then run every runnable
activation until all have yielded, step physics for the active scene,
and schedule collision hats. Activations run in (object index, script
index, activation id) order and every tie-break is explicit, so a given
project, seed, and input stream replays to identical state hashes.

Scene states persist while inactive: suspended scripts, positions, and
pen output resume when the scene is switched back to. Only the active
scene executes bricks or physics. Keyboard input has no hat and is
ignored here; the gateway echoes it for replay.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..formula.evaluate import SENSOR_DEFAULTS
from ..physics.hull import compute_convex_hull, mask_from_png
from ..physics.sat import hull_contains_point
from ..physics.world import physics_step
from ..project.model import Project, Script
from ..project.validate import ScriptLayout, compute_layout
from ..sensors.frames import FrameInputs
from ..values import to_text
from . import bricks as brick_ops
from .hashing import rolling_digest, runtime_hash
from .state import (
    BRICK_BUDGET,
    MAX_CLONES,
    Activation,
    FrameResult,
    ObjectInstance,
    SceneState,
    WatchEntry,
)


class _DiagnosticSink:
    """Adapter so formula evaluation reports straight into frame events."""

    def __init__(self, rt: "Runtime"):
        self._rt = rt

    def append(self, pair) -> None:
        self._rt.diagnostic(*pair)


@dataclass
class Runtime:
    project: Project
    seed: int
    rng: random.Random
    frame: int = 0                  # next frame to execute
    active_scene_index: int = 0
    scene_states: dict[int, SceneState] = field(default_factory=dict)
    variables: dict = field(default_factory=dict)
    lists: dict = field(default_factory=dict)
    watched: list[WatchEntry] = field(default_factory=list)
    next_instance_id: int = 0
    next_activation_id: int = 0
    next_ask_id: int = 1
    current_sensors: dict[str, float] = field(default_factory=dict)

    # per-frame accumulators, reset by step_frame
    events: list = field(default_factory=list)
    pen_segments: list = field(default_factory=list)
    pen_stamps: list = field(default_factory=list)

    _layouts: dict[int, ScriptLayout] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.frame_diagnostics = _DiagnosticSink(self)

    @property
    def active_scene(self) -> SceneState:
        return self.scene_states[self.active_scene_index]

    def layout_for(self, script: Script) -> ScriptLayout:
        key = id(script)
        layout = self._layouts.get(key)
        if layout is None:
            layout = self._layouts[key] = compute_layout(script)
        return layout

    def emit(self, event: dict) -> None:
        self.events.append(event)

    def diagnostic(self, code: str, detail: str) -> None:
        self.emit({"type": "diagnostic", "code": code, "detail": detail})

    def add_pen_segment(self, scene: SceneState, inst: ObjectInstance,
                        x1: float, y1: float, x2: float, y2: float) -> None:
        r, g, b = inst.pen_color
        self.pen_segments.append({
            "x1": x1, "y1": y1, "x2": x2, "y2": y2,
            "size": inst.pen_size, "color": [r, g, b],
        })
        scene.pen_digest = rolling_digest(
            scene.pen_digest, ("segment", x1, y1, x2, y2, inst.pen_size, r, g, b))

    def add_pen_stamp(self, scene: SceneState, inst: ObjectInstance,
                      look_name: str) -> None:
        body = inst.body
        self.pen_stamps.append({
            "object": inst.name, "look": look_name, "x": body.x, "y": body.y,
            "rotation": body.direction, "scale": body.scale,
            "transparency": inst.transparency,
        })
        scene.pen_digest = rolling_digest(
            scene.pen_digest,
            ("stamp", inst.name, look_name, body.x, body.y,
             body.direction, body.scale, inst.transparency))

    def watch_variable(self, inst: ObjectInstance, name: str,
                       show: bool) -> None:
        instance_id = inst.instance_id if name in inst.variables else None
        for entry in self.watched:
            if (entry.instance_id, entry.name) == (instance_id, name):
                if not show:
                    self.watched.remove(entry)
                return
        if show:
            self.watched.append(WatchEntry(instance_id, name))


def start_program(project: Project, seed: int = 0) -> Runtime:
    rt = Runtime(project=project, seed=seed, rng=random.Random(seed))
    rt.variables = dict(project.variables)
    rt.lists = {name: list(items) for name, items in project.lists.items()}
    rt.current_sensors = dict(SENSOR_DEFAULTS)
    _enter_scene(rt, 0)
    return rt


def _enter_scene(rt: Runtime, scene_index: int) -> None:
    scene_obj = rt.project.scenes[scene_index]
    scene = SceneState(scene_index=scene_index)
    rt.scene_states[scene_index] = scene
    for object_index, obj in enumerate(scene_obj.objects):
        for look_index, look in enumerate(obj.looks):
            mask = mask_from_png(look.data)
            hull = compute_convex_hull(mask)
            width = float(len(mask[0])) if mask else 0.0
            scene.hulls[(object_index, look_index)] = \
                (hull, width, float(len(mask)))
        instance_id = rt.next_instance_id
        rt.next_instance_id += 1
        body = scene.world.add_body(instance_id)
        inst = ObjectInstance(instance_id, object_index, obj, body,
                              layer=object_index)
        inst.variables = dict(obj.variables)
        inst.lists = {name: list(items) for name, items in obj.lists.items()}
        if obj.looks:
            body.set_hull(*scene.hulls[(object_index, 0)])
        scene.instances[instance_id] = inst
    for inst in scene.instances_in_order():
        for script_index, script in enumerate(inst.obj.scripts):
            if script.hat == "WhenProgramStarted":
                _start_or_restart(rt, scene, inst.instance_id, script_index)


def _new_activation(rt: Runtime, scene: SceneState, instance_id: int,
                    script_index: int) -> Activation:
    act = Activation(
        activation_id=rt.next_activation_id,
        instance_id=instance_id,
        script_index=script_index,
        script=scene.instances[instance_id].obj.scripts[script_index],
    )
    rt.next_activation_id += 1
    scene.activations[act.activation_id] = act
    return act


def _restart(act: Activation) -> None:
    # keeps bricks_this_frame: the per-frame budget survives restarts,
    # which is what stops a script broadcasting to itself forever
    act.pc = 0
    act.loop_stack = []
    act.wake_frame = None
    act.waiting_on = None
    act.waiting_ask = None
    act.ask_variable = ""
    act.glide = None
    act.finished = False
    act.yielded = False


def _start_or_restart(rt: Runtime, scene: SceneState, instance_id: int,
                      script_index: int) -> Activation:
    for act in scene.activations.values():
        if (act.instance_id, act.script_index) == (instance_id, script_index):
            _restart(act)
            return act
    return _new_activation(rt, scene, instance_id, script_index)


def broadcast(rt: Runtime, scene: SceneState, message: str,
              exclude: int | None = None) -> list[int]:
    """Start or restart every matching receiver; returns activation ids.

    ``exclude`` keeps a broadcast-and-wait sender from deadlocking on a
    restart of its own script when it receives its own message.
    """
    receivers = []
    for inst in scene.instances_in_order():
        for script_index, script in enumerate(inst.obj.scripts):
            if script.hat != "WhenBroadcastReceived" \
                    or script.message != message:
                continue
            existing = None
            for act in scene.activations.values():
                if (act.instance_id, act.script_index) == \
                        (inst.instance_id, script_index):
                    existing = act
                    break
            if existing is not None and existing.activation_id == exclude:
                continue
            if existing is not None:
                _restart(existing)
                receivers.append(existing.activation_id)
            else:
                receivers.append(
                    _new_activation(rt, scene, inst.instance_id,
                                    script_index).activation_id)
    return receivers


def _clone_count(rt: Runtime) -> int:
    return sum(1 for scene in rt.scene_states.values()
               for inst in scene.instances.values() if inst.is_clone)


def spawn_clone(rt: Runtime, scene: SceneState,
                source: ObjectInstance) -> None:
    if _clone_count(rt) >= MAX_CLONES:
        rt.diagnostic("clone_limit_reached", source.name)
        return
    instance_id = rt.next_instance_id
    rt.next_instance_id += 1
    body = scene.world.add_body(instance_id)
    inst = ObjectInstance(instance_id, source.object_index, source.obj, body,
                          is_clone=True)
    inst.clone_state_from(source)
    scene.instances[instance_id] = inst
    for script_index, script in enumerate(inst.obj.scripts):
        if script.hat == "WhenCloned":
            _schedule_hat(scene, instance_id, script_index)


def delete_instance(rt: Runtime, scene: SceneState, instance_id: int) -> None:
    scene.instances.pop(instance_id, None)
    scene.world.remove_body(instance_id)
    for act in scene.activations.values():
        if act.instance_id == instance_id:
            act.finished = True
    scene.pending_hats = [entry for entry in scene.pending_hats
                          if entry[0] != instance_id]
    rt.watched = [w for w in rt.watched if w.instance_id != instance_id]


def switch_scene(rt: Runtime, name: str) -> bool:
    for scene_index, scene_obj in enumerate(rt.project.scenes):
        if scene_obj.name == name:
            if scene_index == rt.active_scene_index:
                return False
            rt.active_scene_index = scene_index
            if scene_index not in rt.scene_states:
                _enter_scene(rt, scene_index)
            return True
    rt.diagnostic("unknown_scene", name)
    return False


def switch_look(rt: Runtime, scene: SceneState, inst: ObjectInstance,
                look_index: int) -> None:
    if look_index == inst.look_index:
        return
    inst.look_index = look_index
    inst.body.set_hull(*scene.hulls[(inst.object_index, look_index)])


def _schedule_hat(scene: SceneState, instance_id: int,
                  script_index: int) -> None:
    entry = (instance_id, script_index)
    if entry not in scene.pending_hats:
        scene.pending_hats.append(entry)


def _apply_answers(rt: Runtime, answers) -> None:
    for ask_id, text in answers:
        for scene_index in sorted(rt.scene_states):
            scene = rt.scene_states[scene_index]
            hit = None
            for act_id in sorted(scene.activations):
                act = scene.activations[act_id]
                if act.waiting_ask == ask_id and not act.finished:
                    hit = act
                    break
            if hit is None:
                continue
            inst = scene.instances.get(hit.instance_id)
            if inst is not None:
                brick_ops._set_variable(rt, inst, hit.ask_variable, text)
            hit.waiting_ask = None
            hit.ask_variable = ""
            break


def _advance_glides(rt: Runtime, scene: SceneState) -> None:
    for act_id in sorted(scene.activations):
        act = scene.activations[act_id]
        if act.glide is None or act.finished:
            continue
        inst = scene.instances.get(act.instance_id)
        if inst is None:
            act.glide = None
            continue
        start, end, x0, y0, x1, y1 = act.glide
        if rt.frame >= end:
            brick_ops._move_instance(rt, scene, inst, x1, y1)
            act.glide = None
        else:
            t = (rt.frame - start + 1) / (end - start)
            brick_ops._move_instance(rt, scene, inst,
                                     x0 + (x1 - x0) * t, y0 + (y1 - y0) * t)


def _release_waits(scene: SceneState) -> None:
    for act in scene.activations.values():
        if act.waiting_on is None:
            continue
        act.waiting_on = {
            other for other in act.waiting_on
            if other in scene.activations
            and not scene.activations[other].finished
        }
        if not act.waiting_on:
            act.waiting_on = None


def _fire_pending_hats(rt: Runtime, scene: SceneState) -> None:
    pending, scene.pending_hats = scene.pending_hats, []
    for instance_id, script_index in pending:
        if instance_id in scene.instances:
            _start_or_restart(rt, scene, instance_id, script_index)


def _hit_test_taps(rt: Runtime, scene: SceneState, taps) -> None:
    for tx, ty in taps:
        order = sorted(
            scene.instances.values(),
            key=lambda i: (i.layer, i.object_index, i.instance_id),
            reverse=True)
        for inst in order:
            if not inst.visible or inst.transparency >= 100.0:
                continue
            tapped_scripts = [
                index for index, script in enumerate(inst.obj.scripts)
                if script.hat == "WhenTapped"]
            if not tapped_scripts:
                continue
            points = inst.body.world_points()
            if not points or not hull_contains_point(points, tx, ty):
                continue
            for script_index in tapped_scripts:
                _schedule_hat(scene, inst.instance_id, script_index)
            break


def _run_activation(rt: Runtime, scene: SceneState, act: Activation) -> None:
    inst = scene.instances.get(act.instance_id)
    if inst is None:
        act.finished = True
        return
    while True:
        if act.finished:
            return
        if act.pc >= len(act.script.bricks):
            act.finished = True
            return
        if act.bricks_this_frame >= BRICK_BUDGET:
            if not act.budget_tripped:
                act.budget_tripped = True
                rt.diagnostic(
                    "brick_budget_exhausted",
                    f"{inst.name} script {act.script_index}")
            act.yielded = True
            return
        act.bricks_this_frame += 1
        action = brick_ops.execute_brick(rt, scene, act, inst)
        if action == "yield":
            act.yielded = True
            return
        if action == "stop":
            return
        if rt.active_scene_index != scene.scene_index:
            act.yielded = True   # scene switched away mid-run
            return


def _runnable(rt: Runtime, scene: SceneState) -> Activation | None:
    best = None
    best_key = None
    for act in scene.activations.values():
        if act.finished or act.yielded:
            continue
        if act.waiting_on is not None or act.waiting_ask is not None:
            continue
        if act.wake_frame is not None and act.wake_frame > rt.frame:
            continue
        inst = scene.instances.get(act.instance_id)
        if inst is None:
            act.finished = True
            continue
        key = (inst.object_index, act.script_index, act.activation_id)
        if best_key is None or key < best_key:
            best, best_key = act, key
    return best


def _display_list(scene: SceneState) -> list:
    entries = []
    order = sorted(scene.instances.values(),
                   key=lambda i: (i.layer, i.object_index, i.instance_id))
    for inst in order:
        look = inst.current_look()
        if look is None:
            continue
        body = inst.body
        entries.append({
            "id": inst.instance_id, "object": inst.name, "look": look.name,
            "x": body.x, "y": body.y, "rotation": body.direction,
            "scale": body.scale, "transparency": inst.transparency,
            "visible": inst.visible, "layer": inst.layer,
            "brightness": inst.brightness,
        })
    return entries


def _watched_values(rt: Runtime) -> list:
    values = []
    for entry in rt.watched:
        if entry.instance_id is None:
            if entry.name in rt.variables:
                values.append({"object": "", "name": entry.name,
                               "value": to_text(rt.variables[entry.name])})
            continue
        for scene_index in sorted(rt.scene_states):
            inst = rt.scene_states[scene_index].instances.get(
                entry.instance_id)
            if inst is not None and entry.name in inst.variables:
                values.append({"object": inst.name, "name": entry.name,
                               "value": to_text(inst.variables[entry.name])})
                break
    return values


def step_frame(rt: Runtime, inputs: FrameInputs | None = None) -> FrameResult:
    if inputs is None:
        inputs = FrameInputs()
    rt.current_sensors = {**SENSOR_DEFAULTS, **inputs.sensors}
    rt.events = []
    rt.pen_segments = []
    rt.pen_stamps = []
    for scene in rt.scene_states.values():
        for act in scene.activations.values():
            act.yielded = False
            act.bricks_this_frame = 0
            act.budget_tripped = False

    scene = rt.active_scene
    _fire_pending_hats(rt, scene)
    _hit_test_taps(rt, scene, inputs.taps)   # against last frame's display
    _apply_answers(rt, inputs.answers)
    _advance_glides(rt, scene)
    _release_waits(scene)

    while True:
        scene = rt.active_scene      # a SwitchScene brick may move this
        act = _runnable(rt, scene)
        if act is None:
            break
        if act.wake_frame is not None:
            act.wake_frame = None
        _run_activation(rt, scene, act)

    scene = rt.active_scene
    pen_before = {
        inst.instance_id: (inst.body.x, inst.body.y)
        for inst in scene.instances.values() if inst.pen_down}
    contacts = physics_step(scene.world)
    for instance_id in sorted(pen_before):
        inst = scene.instances.get(instance_id)
        if inst is None:
            continue
        x1, y1 = pen_before[instance_id]
        if (inst.body.x, inst.body.y) != (x1, y1):
            rt.add_pen_segment(scene, inst, x1, y1, inst.body.x, inst.body.y)

    for contact in contacts:
        for instance_id in (contact.body_a, contact.body_b):
            inst = scene.instances.get(instance_id)
            if inst is None:
                continue
            for script_index, script in enumerate(inst.obj.scripts):
                if script.hat == "WhenPhysicalCollision":
                    _schedule_hat(scene, instance_id, script_index)

    for state in rt.scene_states.values():
        state.activations = {
            act_id: act for act_id, act in state.activations.items()
            if not act.finished}

    events = rt.events
    segments = rt.pen_segments
    stamps = rt.pen_stamps
    rt.events = []
    rt.pen_segments = []
    rt.pen_stamps = []
    executed = rt.frame
    rt.frame += 1
    return FrameResult(
        frame=executed,
        hash=runtime_hash(rt),
        display=_display_list(rt.active_scene),
        events=events,
        pen_segments=segments,
        pen_stamps=stamps,
        watched=_watched_values(rt),
    )
