"""Per-brick semantics.

``execute_brick`` runs the brick at the activation's program counter,
advances the counter, and answers how the scheduler should proceed:
"continue" (keep executing this activation), "yield" (done for this
frame), or "stop" (the activation's instance was deleted).

Out-of-range or non-finite numeric inputs never raise: they clamp or
no-op with a diagnostic event, matching the formula engine's
total-evaluation rule. docs/bricks.md states each brick's contract.
"""

from __future__ import annotations

import math

from ..formula import EvalContext, evaluate
from ..values import to_boolean, to_number, to_text

TAU_DEGREES = 360.0


def _finite(rt, value: float, where: str) -> float:
    if math.isfinite(value):
        return value
    rt.diagnostic("non_finite_value", where)
    return 0.0


def _clamp(value: float, lo: float, hi: float) -> float:
    return max(lo, min(hi, value))


def make_context(rt, inst) -> EvalContext:
    body = inst.body
    return EvalContext(
        sensors=rt.current_sensors,
        properties={
            "position_x": body.x, "position_y": body.y,
            "direction": body.direction, "size": inst.size_percent,
            "transparency": inst.transparency, "brightness": inst.brightness,
            "look_number": float(inst.look_index + 1),
            "layer": float(inst.layer),
        },
        variables={**rt.variables, **inst.variables},
        lists={**rt.lists, **inst.lists},
        rng=rt.rng,
        diagnostics=rt.frame_diagnostics,
    )


def _eval_number(rt, ctx, brick, slot: str, where: str) -> float:
    return _finite(rt, to_number(evaluate(brick.formulas[slot], ctx)), where)


def _round_index(value: float) -> int:
    return math.floor(value + 0.5)


def _move_instance(rt, scene, inst, x: float, y: float) -> None:
    body = inst.body
    if (x, y) == (body.x, body.y):
        return
    if inst.pen_down:
        rt.add_pen_segment(scene, inst, body.x, body.y, x, y)
    body.move_to(x, y)


def _set_variable(rt, inst, name: str, value) -> None:
    if name in inst.variables:
        inst.variables[name] = value
    else:
        rt.variables[name] = value


def _read_variable(rt, inst, name: str):
    if name in inst.variables:
        return inst.variables[name]
    return rt.variables.get(name, 0.0)


def _resolve_list(rt, inst, name: str) -> list:
    if name in inst.lists:
        return inst.lists[name]
    return rt.lists.setdefault(name, [])


def execute_brick(rt, scene, act, inst) -> str:
    from . import engine  # deferred: engine imports this module at load time

    brick = act.script.bricks[act.pc]
    layout = rt.layout_for(act.script)
    kind = brick.kind
    ctx = make_context(rt, inst)
    pc = act.pc
    act.pc += 1
    body = inst.body

    # --- control flow ---
    if kind == "Forever":
        act.loop_stack.append([pc, None])
        return "continue"
    if kind == "Repeat":
        times = _round_index(_eval_number(rt, ctx, brick, "times", "Repeat"))
        if times >= 1:
            act.loop_stack.append([pc, times])
        else:
            act.pc = layout.loop_end[pc] + 1
        return "continue"
    if kind == "EndOfLoop":
        top = act.loop_stack[-1]
        if top[1] is not None:
            top[1] -= 1
            if top[1] <= 0:
                act.loop_stack.pop()
                return "continue"
        act.pc = top[0] + 1
        return "yield"
    if kind == "If":
        if not to_boolean(evaluate(brick.formulas["condition"], ctx)):
            else_index = layout.if_else.get(pc)
            act.pc = else_index + 1 if else_index is not None \
                else layout.if_end[pc]
        return "continue"
    if kind == "Else":
        act.pc = layout.else_end[pc]  # true branch done: jump to End of if
        return "continue"
    if kind == "EndOfIf":
        return "continue"
    if kind == "Wait":
        seconds = _eval_number(rt, ctx, brick, "seconds", "Wait")
        frames = math.ceil(seconds * 60.0)
        if frames > 0:
            act.wake_frame = rt.frame + frames
            return "yield"
        return "continue"
    if kind == "Note":
        return "continue"
    if kind == "Clone":
        engine.spawn_clone(rt, scene, inst)
        return "continue"
    if kind == "DeleteThisClone":
        if inst.is_clone:
            engine.delete_instance(rt, scene, inst.instance_id)
            return "stop"
        return "continue"
    if kind == "SwitchScene":
        if engine.switch_scene(rt, brick.options["scene"]):
            return "yield"
        return "continue"

    # --- events ---
    if kind == "Broadcast":
        engine.broadcast(rt, scene, brick.options["message"])
        return "continue"
    if kind == "BroadcastAndWait":
        receivers = engine.broadcast(rt, scene, brick.options["message"],
                                     exclude=act.activation_id)
        if receivers:
            act.waiting_on = set(receivers)
            return "yield"
        return "continue"

    # --- motion ---
    if kind == "PlaceAt":
        _move_instance(rt, scene, inst,
                       _eval_number(rt, ctx, brick, "x", kind),
                       _eval_number(rt, ctx, brick, "y", kind))
        return "continue"
    if kind == "SetX":
        _move_instance(rt, scene, inst,
                       _eval_number(rt, ctx, brick, "x", kind), body.y)
        return "continue"
    if kind == "SetY":
        _move_instance(rt, scene, inst, body.x,
                       _eval_number(rt, ctx, brick, "y", kind))
        return "continue"
    if kind == "ChangeXBy":
        _move_instance(rt, scene, inst,
                       body.x + _eval_number(rt, ctx, brick, "dx", kind), body.y)
        return "continue"
    if kind == "ChangeYBy":
        _move_instance(rt, scene, inst, body.x,
                       body.y + _eval_number(rt, ctx, brick, "dy", kind))
        return "continue"
    if kind == "MoveSteps":
        steps = _eval_number(rt, ctx, brick, "steps", kind)
        theta = math.radians(body.direction)
        _move_instance(rt, scene, inst,
                       body.x + steps * math.sin(theta),
                       body.y + steps * math.cos(theta))
        return "continue"
    if kind == "TurnLeft":
        body.turn_to((body.direction
                      - _eval_number(rt, ctx, brick, "degrees", kind))
                     % TAU_DEGREES)
        return "continue"
    if kind == "TurnRight":
        body.turn_to((body.direction
                      + _eval_number(rt, ctx, brick, "degrees", kind))
                     % TAU_DEGREES)
        return "continue"
    if kind == "PointInDirection":
        body.turn_to(_eval_number(rt, ctx, brick, "degrees", kind)
                     % TAU_DEGREES)
        return "continue"
    if kind == "GlideTo":
        tx = _eval_number(rt, ctx, brick, "x", kind)
        ty = _eval_number(rt, ctx, brick, "y", kind)
        seconds = _eval_number(rt, ctx, brick, "seconds", kind)
        frames = math.ceil(seconds * 60.0)
        if frames <= 0:
            _move_instance(rt, scene, inst, tx, ty)
            return "continue"
        x0, y0 = body.x, body.y
        act.glide = (rt.frame, rt.frame + frames, x0, y0, tx, ty)
        act.wake_frame = rt.frame + frames
        t = 1.0 / frames
        _move_instance(rt, scene, inst, x0 + (tx - x0) * t, y0 + (ty - y0) * t)
        return "yield"
    if kind == "IfOnEdgeBounce":
        _if_on_edge_bounce(rt, scene, inst)
        return "continue"
    if kind == "ComeToFront":
        top = max((other.layer for other in scene.instances.values()), default=0)
        if inst.layer < top or any(other.layer == top and other is not inst
                                   for other in scene.instances.values()):
            inst.layer = top + 1
        return "continue"
    if kind == "GoBackLayers":
        back = _round_index(_eval_number(rt, ctx, brick, "layers", kind))
        inst.layer = max(0, inst.layer - back)
        return "continue"
    if kind == "SetMotionType":
        body.set_motion_type(brick.options["motion_type"])
        return "continue"
    if kind == "SetVelocity":
        body.set_velocity(_eval_number(rt, ctx, brick, "vx", kind),
                          _eval_number(rt, ctx, brick, "vy", kind))
        return "continue"
    if kind == "SetGravity":
        scene.world.set_gravity(_eval_number(rt, ctx, brick, "gx", kind),
                                _eval_number(rt, ctx, brick, "gy", kind))
        return "continue"
    if kind == "SetMass":
        body.mass = max(0.0, _eval_number(rt, ctx, brick, "mass", kind))
        return "continue"
    if kind == "SetBounceFactor":
        body.bounce_factor = _clamp(
            _eval_number(rt, ctx, brick, "factor", kind), 0.0, 1.0)
        return "continue"
    if kind == "SetFriction":
        body.friction = max(0.0, _eval_number(rt, ctx, brick, "friction", kind))
        return "continue"

    # --- sound ---
    if kind == "StartSound":
        rt.emit({"type": "sound_start", "object": inst.name,
                 "sound": brick.options["sound"], "volume": inst.volume})
        return "continue"
    if kind == "StopAllSounds":
        rt.emit({"type": "sound_stop"})
        return "continue"
    if kind == "SetVolume":
        inst.volume = _clamp(_eval_number(rt, ctx, brick, "percent", kind),
                             0.0, 100.0)
        return "continue"
    if kind == "Vibrate":
        seconds = max(0.0, _eval_number(rt, ctx, brick, "seconds", kind))
        rt.emit({"type": "haptic", "duration": seconds})
        return "continue"

    # --- looks ---
    if kind == "SetLook":
        engine.switch_look(rt, scene, inst,
                           _look_index(inst, brick.options["look"]))
        return "continue"
    if kind == "NextLook":
        if inst.obj.looks:
            engine.switch_look(rt, scene, inst,
                               (inst.look_index + 1) % len(inst.obj.looks))
        return "continue"
    if kind == "Show":
        inst.visible = True
        return "continue"
    if kind == "Hide":
        inst.visible = False
        return "continue"
    if kind == "SetSize":
        inst.size_percent = max(0.0,
                                _eval_number(rt, ctx, brick, "percent", kind))
        body.rescale(inst.size_percent / 100.0)
        return "continue"
    if kind == "ChangeSizeBy":
        inst.size_percent = max(
            0.0, inst.size_percent + _eval_number(rt, ctx, brick, "amount", kind))
        body.rescale(inst.size_percent / 100.0)
        return "continue"
    if kind == "SetTransparency":
        inst.transparency = _clamp(
            _eval_number(rt, ctx, brick, "percent", kind), 0.0, 100.0)
        return "continue"
    if kind == "ChangeTransparencyBy":
        inst.transparency = _clamp(
            inst.transparency + _eval_number(rt, ctx, brick, "amount", kind),
            0.0, 100.0)
        return "continue"
    if kind == "SetBrightness":
        inst.brightness = _clamp(
            _eval_number(rt, ctx, brick, "percent", kind), 0.0, 200.0)
        return "continue"
    if kind == "ChangeBrightnessBy":
        inst.brightness = _clamp(
            inst.brightness + _eval_number(rt, ctx, brick, "amount", kind),
            0.0, 200.0)
        return "continue"
    if kind in ("Say", "Think"):
        text = to_text(evaluate(brick.formulas["text"], ctx))
        inst.bubble_kind = kind.lower() if text else ""
        inst.bubble_text = text
        rt.emit({"type": kind.lower(), "object": inst.name, "text": text})
        return "continue"
    if kind == "Ask":
        question = to_text(evaluate(brick.formulas["question"], ctx))
        ask_id = rt.next_ask_id
        rt.next_ask_id += 1
        rt.emit({"type": "ask", "id": ask_id, "object": inst.name,
                 "question": question})
        act.waiting_ask = ask_id
        act.ask_variable = brick.options["variable"]
        return "yield"

    # --- pen ---
    if kind == "PenDown":
        inst.pen_down = True
        return "continue"
    if kind == "PenUp":
        inst.pen_down = False
        return "continue"
    if kind == "SetPenSize":
        inst.pen_size = max(0.0, _eval_number(rt, ctx, brick, "size", kind))
        return "continue"
    if kind == "SetPenColor":
        inst.pen_color = (
            _clamp(_eval_number(rt, ctx, brick, "red", kind), 0.0, 255.0),
            _clamp(_eval_number(rt, ctx, brick, "green", kind), 0.0, 255.0),
            _clamp(_eval_number(rt, ctx, brick, "blue", kind), 0.0, 255.0),
        )
        return "continue"
    if kind == "Stamp":
        look = inst.current_look()
        if look is not None:
            rt.add_pen_stamp(scene, inst, look.name)
        return "continue"

    # --- data ---
    if kind == "SetVariable":
        _set_variable(rt, inst, brick.options["variable"],
                      evaluate(brick.formulas["value"], ctx))
        return "continue"
    if kind == "ChangeVariable":
        name = brick.options["variable"]
        delta = _eval_number(rt, ctx, brick, "delta", kind)
        _set_variable(rt, inst, name,
                      to_number(_read_variable(rt, inst, name)) + delta)
        return "continue"
    if kind == "ShowVariable":
        rt.watch_variable(inst, brick.options["variable"], show=True)
        return "continue"
    if kind == "HideVariable":
        rt.watch_variable(inst, brick.options["variable"], show=False)
        return "continue"
    if kind == "AddToList":
        _resolve_list(rt, inst, brick.options["list"]).append(
            evaluate(brick.formulas["value"], ctx))
        return "continue"
    if kind == "DeleteFromList":
        items = _resolve_list(rt, inst, brick.options["list"])
        index = _round_index(_eval_number(rt, ctx, brick, "index", kind))
        if 1 <= index <= len(items):
            del items[index - 1]
        else:
            rt.diagnostic("list_index_out_of_range",
                          f"delete {index} of {brick.options['list']}")
        return "continue"
    if kind == "InsertIntoList":
        items = _resolve_list(rt, inst, brick.options["list"])
        index = _round_index(_eval_number(rt, ctx, brick, "index", kind))
        value = evaluate(brick.formulas["value"], ctx)
        if 1 <= index <= len(items) + 1:
            items.insert(index - 1, value)
        else:
            rt.diagnostic("list_index_out_of_range",
                          f"insert {index} of {brick.options['list']}")
        return "continue"
    if kind == "ReplaceItemInList":
        items = _resolve_list(rt, inst, brick.options["list"])
        index = _round_index(_eval_number(rt, ctx, brick, "index", kind))
        value = evaluate(brick.formulas["value"], ctx)
        if 1 <= index <= len(items):
            items[index - 1] = value
        else:
            rt.diagnostic("list_index_out_of_range",
                          f"replace {index} of {brick.options['list']}")
        return "continue"

    rt.diagnostic("unknown_brick", kind)
    return "continue"


def _look_index(inst, name: str) -> int:
    for i, look in enumerate(inst.obj.looks):
        if look.name == name:
            return i
    return inst.look_index


def _if_on_edge_bounce(rt, scene, inst) -> None:
    body = inst.body
    points = body.world_points()
    if not points:
        return
    half_w = rt.project.header.stage_width / 2.0
    half_h = rt.project.header.stage_height / 2.0
    min_x = min(p[0] for p in points)
    max_x = max(p[0] for p in points)
    min_y = min(p[1] for p in points)
    max_y = max(p[1] for p in points)
    direction = body.direction
    if min_x < -half_w or max_x > half_w:
        direction = (-direction) % TAU_DEGREES
    if min_y < -half_h or max_y > half_h:
        direction = (180.0 - direction) % TAU_DEGREES
    if direction != body.direction:
        body.turn_to(direction)

    x, y = body.x, body.y
    if max_x - min_x > 2 * half_w:
        x -= (min_x + max_x) / 2.0  # wider than the stage: center it
    elif min_x < -half_w:
        x += -half_w - min_x
    elif max_x > half_w:
        x -= max_x - half_w
    if max_y - min_y > 2 * half_h:
        y -= (min_y + max_y) / 2.0
    elif min_y < -half_h:
        y += -half_h - min_y
    elif max_y > half_h:
        y -= max_y - half_h
    _move_instance(rt, scene, inst, x, y)
