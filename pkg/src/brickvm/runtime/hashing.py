"""Canonical state hash.

The hash must be a pure function of runtime state and identical across
processes, so everything is reduced to a nested structure of primitives
and fed to SHA-256 with type tags and length prefixes. Floats hash as
little-endian IEEE doubles: -0.0 and 0.0 hash differently, which is
intended — they are different states. Transient per-frame flags (yielded,
brick counters) stay out.
"""

from __future__ import annotations

import hashlib
import struct


def _feed(h, value) -> None:
    if value is None:
        h.update(b"N")
    elif isinstance(value, bool):
        h.update(b"B1" if value else b"B0")
    elif isinstance(value, float):
        h.update(b"F" + struct.pack("<d", value))
    elif isinstance(value, int):
        data = str(value).encode()
        h.update(b"I%d:" % len(data) + data)
    elif isinstance(value, str):
        data = value.encode("utf-8")
        h.update(b"S%d:" % len(data) + data)
    elif isinstance(value, bytes):
        h.update(b"Y%d:" % len(value) + value)
    elif isinstance(value, (list, tuple)):
        h.update(b"L%d:" % len(value))
        for item in value:
            _feed(h, item)
    else:
        raise TypeError(f"unhashable state element {type(value)!r}")


def digest_state(structure) -> str:
    h = hashlib.sha256()
    _feed(h, structure)
    return h.hexdigest()


def rolling_digest(previous: bytes, structure) -> bytes:
    h = hashlib.sha256()
    h.update(previous)
    _feed(h, structure)
    return h.digest()


def _sorted_values(mapping) -> list:
    return [(key, mapping[key]) for key in sorted(mapping)]


def _value_state(value) -> tuple:
    # bool before float: True is not 1.0 here
    if isinstance(value, bool):
        return ("b", value)
    if isinstance(value, str):
        return ("s", value)
    return ("n", float(value))


def _body_state(body) -> tuple:
    return (body.x, body.y, body.direction, body.scale, body.motion_type,
            body.mass, body.velocity_x, body.velocity_y,
            body.bounce_factor, body.friction, body.width, body.height)


def _instance_state(inst) -> tuple:
    return (
        inst.instance_id, inst.object_index, inst.name, inst.is_clone,
        _body_state(inst.body), inst.look_index, inst.size_percent,
        inst.transparency, inst.brightness, inst.visible, inst.layer,
        inst.volume, inst.bubble_kind, inst.bubble_text,
        inst.pen_down, inst.pen_size, list(inst.pen_color),
        [(k, _value_state(v)) for k, v in _sorted_values(inst.variables)],
        [(k, [_value_state(v) for v in items])
         for k, items in _sorted_values(inst.lists)],
    )


def _activation_state(act) -> tuple:
    return (
        act.activation_id, act.instance_id, act.script_index, act.pc,
        [tuple(entry) for entry in act.loop_stack],
        act.wake_frame,
        sorted(act.waiting_on) if act.waiting_on is not None else None,
        act.waiting_ask, act.ask_variable,
        list(act.glide) if act.glide else None,
        act.finished, act.budget_tripped,
    )


def _scene_state(scene) -> tuple:
    return (
        scene.scene_index,
        (scene.world.gravity_x, scene.world.gravity_y),
        [_instance_state(scene.instances[i]) for i in sorted(scene.instances)],
        [_activation_state(scene.activations[i])
         for i in sorted(scene.activations)],
        scene.pen_digest,
        sorted(scene.pending_hats),
    )


def runtime_state_structure(rt) -> tuple:
    """Everything that determines future behavior, in canonical order."""
    return (
        rt.frame,
        rt.active_scene_index,
        sorted(rt.scene_states),
        [_scene_state(rt.scene_states[i]) for i in sorted(rt.scene_states)],
        [(k, _value_state(v)) for k, v in _sorted_values(rt.variables)],
        [(k, [_value_state(v) for v in items])
         for k, items in _sorted_values(rt.lists)],
        [(w.instance_id, w.name) for w in rt.watched],
        rt.next_instance_id, rt.next_activation_id, rt.next_ask_id,
        repr(rt.rng.getstate()),
    )


def runtime_hash(rt) -> str:
    return digest_state(runtime_state_structure(rt))
