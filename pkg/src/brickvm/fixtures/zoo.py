"""Small runnable projects, one per feature cluster.

Used by the reproducibility tests: each project must replay to identical
state hashes from the same seed and input stream, so together they keep
every scheduler path deterministic.
"""

from __future__ import annotations

from ..formula import parse_formula
from ..project.model import (
    Brick,
    Look,
    Project,
    Scene,
    Script,
    SpriteObject,
    empty_project,
)
from .images import ball_png, solid_png


def _f(text: str):
    return parse_formula(text)


def _sprite(name: str, look: bytes | None = None) -> SpriteObject:
    obj = SpriteObject(name)
    if look is not None:
        obj.looks.append(Look.from_png("skin", look))
    return obj


def _project(name: str, *objects: SpriteObject, variables=None,
             lists=None) -> Project:
    p = empty_project(name)
    p.scenes[0].objects.extend(objects)
    if variables:
        p.variables.update(variables)
    if lists:
        p.lists.update(lists)
    return p


def _counter() -> Project:
    obj = _sprite("Counter")
    obj.scripts.append(Script("WhenProgramStarted", [
        Brick("Forever"),
        Brick("ChangeVariable", formulas={"delta": _f("1")},
              options={"variable": "ticks"}),
        Brick("If", formulas={"condition": _f('"ticks" > 100')}),
        Brick("SetVariable", formulas={"value": _f("0")},
              options={"variable": "ticks"}),
        Brick("EndOfIf"),
        Brick("EndOfLoop"),
    ]))
    return _project("counter", obj, variables={"ticks": 0.0})


def _tilt_bouncer() -> Project:
    obj = _sprite("Bouncer", ball_png(8))
    obj.scripts.append(Script("WhenProgramStarted", [
        Brick("Forever"),
        Brick("IfOnEdgeBounce"),
        Brick("PlaceAt", formulas={"x": _f("X_INCLINATION * -10"),
                                   "y": _f("Y_INCLINATION * -10")}),
        Brick("EndOfLoop"),
    ]))
    return _project("bouncer", obj)


def _ping_pong() -> Project:
    ping = _sprite("Ping")
    ping.scripts.append(Script("WhenProgramStarted", [
        Brick("Broadcast", options={"message": "ping"}),
    ]))
    ping.scripts.append(Script("WhenBroadcastReceived", [
        Brick("Wait", formulas={"seconds": _f("0.03")}),
        Brick("ChangeVariable", formulas={"delta": _f("1")},
              options={"variable": "rallies"}),
        Brick("Broadcast", options={"message": "pong"}),
    ], message="ping"))
    pong = _sprite("Pong")
    pong.scripts.append(Script("WhenBroadcastReceived", [
        Brick("Wait", formulas={"seconds": _f("0.02")}),
        Brick("Broadcast", options={"message": "ping"}),
    ], message="pong"))
    return _project("ping pong", ping, pong, variables={"rallies": 0.0})


def _clone_factory() -> Project:
    obj = _sprite("Stamper", ball_png(6))
    obj.scripts.append(Script("WhenProgramStarted", [
        Brick("Repeat", formulas={"times": _f("8")}),
        Brick("ChangeXBy", formulas={"dx": _f("20")}),
        Brick("Clone"),
        Brick("EndOfLoop"),
    ]))
    obj.scripts.append(Script("WhenCloned", [
        Brick("ChangeVariable", formulas={"delta": _f("1")},
              options={"variable": "born"}),
        Brick("Wait", formulas={"seconds": _f("0.1")}),
        Brick("DeleteThisClone"),
    ]))
    return _project("clone factory", obj, variables={"born": 0.0})


def _physics_drop() -> Project:
    floor = _sprite("Floor", solid_png(400, 20))
    floor.scripts.append(Script("WhenProgramStarted", [
        Brick("PlaceAt", formulas={"x": _f("0"), "y": _f("-200")}),
        Brick("SetMotionType", options={"motion_type": "static"}),
    ]))
    ball = _sprite("Drop", ball_png(12))
    ball.scripts.append(Script("WhenProgramStarted", [
        Brick("PlaceAt", formulas={"x": _f("0"), "y": _f("0")}),
        Brick("SetMotionType", options={"motion_type": "dynamic"}),
        Brick("SetBounceFactor", formulas={"factor": _f("0.5")}),
        Brick("SetGravity", formulas={"gx": _f("0"), "gy": _f("-300")}),
    ]))
    ball.scripts.append(Script("WhenPhysicalCollision", [
        Brick("ChangeVariable", formulas={"delta": _f("1")},
              options={"variable": "hits"}),
        Brick("Vibrate", formulas={"seconds": _f("0.02")}),
    ]))
    return _project("physics drop", floor, ball, variables={"hits": 0.0})


def _pen_spiral() -> Project:
    obj = _sprite("Turtle", ball_png(4))
    obj.scripts.append(Script("WhenProgramStarted", [
        Brick("SetPenColor", formulas={"red": _f("200"), "green": _f("40"),
                                       "blue": _f("40")}),
        Brick("SetPenSize", formulas={"size": _f("2")}),
        Brick("PenDown"),
        Brick("Forever"),
        Brick("MoveSteps", formulas={"steps": _f("6")}),
        Brick("TurnRight", formulas={"degrees": _f("17")}),
        Brick("EndOfLoop"),
    ]))
    return _project("pen spiral", obj)


def _look_cycler() -> Project:
    obj = _sprite("Chameleon")
    obj.looks.append(Look.from_png("red", solid_png(10, 10, (200, 30, 30))))
    obj.looks.append(Look.from_png("green", solid_png(10, 10, (30, 200, 30))))
    obj.looks.append(Look.from_png("blue", solid_png(12, 8, (30, 30, 200))))
    obj.scripts.append(Script("WhenProgramStarted", [
        Brick("Say", formulas={"text": _f("'watch me'")}),
        Brick("Forever"),
        Brick("NextLook"),
        Brick("ChangeSizeBy", formulas={"amount": _f("5")}),
        Brick("ChangeTransparencyBy", formulas={"amount": _f("1")}),
        Brick("ChangeBrightnessBy", formulas={"amount": _f("-1")}),
        Brick("Wait", formulas={"seconds": _f("0.05")}),
        Brick("EndOfLoop"),
    ]))
    return _project("look cycler", obj)


def _list_cruncher() -> Project:
    obj = _sprite("Cruncher")
    obj.scripts.append(Script("WhenProgramStarted", [
        Brick("ShowVariable", options={"variable": "total"}),
        Brick("Forever"),
        Brick("AddToList", formulas={"value": _f("random(1, 6)")},
              options={"list": "rolls"}),
        Brick("ChangeVariable",
              formulas={"delta": _f("element(number_of_items([rolls]), [rolls])")},
              options={"variable": "total"}),
        Brick("If", formulas={"condition": _f("number_of_items([rolls]) > 5")}),
        Brick("DeleteFromList", formulas={"index": _f("1")},
              options={"list": "rolls"}),
        Brick("EndOfIf"),
        Brick("EndOfLoop"),
    ]))
    return _project("list cruncher", obj, variables={"total": 0.0},
                    lists={"rolls": []})


def _scene_hopper() -> Project:
    p = empty_project("scene hopper", scene_name="First")
    first = _sprite("Hopper A")
    first.scripts.append(Script("WhenProgramStarted", [
        Brick("ChangeVariable", formulas={"delta": _f("1")},
              options={"variable": "hops"}),
        Brick("Wait", formulas={"seconds": _f("0.05")}),
        Brick("SwitchScene", options={"scene": "Second"}),
    ]))
    p.scenes[0].objects.append(first)
    second = Scene("Second")
    second.objects.append(SpriteObject("Background"))
    hopper = _sprite("Hopper B")
    hopper.scripts.append(Script("WhenProgramStarted", [
        Brick("ChangeVariable", formulas={"delta": _f("1")},
              options={"variable": "hops"}),
        Brick("Wait", formulas={"seconds": _f("0.05")}),
        Brick("SwitchScene", options={"scene": "First"}),
    ]))
    second.objects.append(hopper)
    p.scenes.append(second)
    p.variables["hops"] = 0.0
    return p


def _glide_patrol() -> Project:
    obj = _sprite("Patrol", ball_png(10))
    obj.scripts.append(Script("WhenProgramStarted", [
        Brick("Forever"),
        Brick("GlideTo", formulas={"x": _f("100"), "y": _f("50"),
                                   "seconds": _f("0.1")}),
        Brick("GlideTo", formulas={"x": _f("-100"), "y": _f("-50"),
                                   "seconds": _f("0.1")}),
        Brick("EndOfLoop"),
    ]))
    asker = _sprite("Greeter")
    asker.scripts.append(Script("WhenProgramStarted", [
        Brick("Ask", formulas={"question": _f("'ready?'")},
              options={"variable": "answer"}),
        Brick("Say", formulas={"text": _f('join(\'hello \', "answer")')}),
    ]))
    return _project("glide patrol", obj, asker, variables={"answer": 0.0})


def zoo_projects() -> list[Project]:
    return [
        _counter(),
        _tilt_bouncer(),
        _ping_pong(),
        _clone_factory(),
        _physics_drop(),
        _pen_spiral(),
        _look_cycler(),
        _list_cruncher(),
        _scene_hopper(),
        _glide_patrol(),
    ]
