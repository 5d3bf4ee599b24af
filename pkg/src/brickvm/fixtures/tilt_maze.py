"""Tilt-controlled marble maze: the showcase project.

Static walls fence a dynamic ball whose gravity tracks the device tilt
every frame, so the marble rolls wherever the player leans the device.
Wall contacts trigger a short haptic pulse.
"""

from __future__ import annotations

from ..formula import parse_formula
from ..project.model import (
    Brick,
    Look,
    Project,
    ProjectHeader,
    Scene,
    Script,
    SpriteObject,
)
from .images import ball_png, solid_png

BALL_DIAMETER = 60
WALL_THICKNESS = 40

# (name, width, height, x, y) in stage coordinates, stage 1080 x 1920
_WALLS = (
    ("Wall top", 1080, WALL_THICKNESS, 0, 940),
    ("Wall bottom", 1080, WALL_THICKNESS, 0, -940),
    ("Wall left", WALL_THICKNESS, 1920, -520, 0),
    ("Wall right", WALL_THICKNESS, 1920, 520, 0),
    ("Bar upper", 700, WALL_THICKNESS, -190, 400),
    ("Bar lower", 700, WALL_THICKNESS, 190, -400),
)


def _f(text: str):
    return parse_formula(text)


def _wall(name: str, width: int, height: int, x: float, y: float) -> SpriteObject:
    wall = SpriteObject(name)
    wall.looks.append(Look.from_png("slab", solid_png(width, height,
                                                      (90, 90, 110))))
    wall.scripts.append(Script("WhenProgramStarted", [
        Brick("PlaceAt", formulas={"x": _f(str(x)), "y": _f(str(y))}),
        Brick("SetMotionType", options={"motion_type": "static"}),
    ]))
    return wall


def tilt_maze_project() -> Project:
    ball = SpriteObject("Marble")
    ball.looks.append(Look.from_png("marble",
                                    ball_png(BALL_DIAMETER, (230, 90, 60))))
    ball.scripts.append(Script("WhenProgramStarted", [
        Brick("PlaceAt", formulas={"x": _f("0"), "y": _f("800")}),
        Brick("SetMotionType", options={"motion_type": "dynamic"}),
        Brick("SetMass", formulas={"mass": _f("1")}),
        Brick("SetBounceFactor", formulas={"factor": _f("0.3")}),
        Brick("SetFriction", formulas={"friction": _f("0.2")}),
        Brick("Forever"),
        Brick("SetGravity", formulas={"gx": _f("X_INCLINATION * -3"),
                                      "gy": _f("Y_INCLINATION * -3")}),
        Brick("EndOfLoop"),
    ]))
    ball.scripts.append(Script("WhenPhysicalCollision", [
        Brick("Vibrate", formulas={"seconds": _f("0.02")}),
    ]))

    scene = Scene("Maze")
    scene.objects.append(SpriteObject("Background"))
    for spec in _WALLS:
        scene.objects.append(_wall(*spec))
    scene.objects.append(ball)

    return Project(
        header=ProjectHeader(name="tilt maze", stage_width=1080,
                             stage_height=1920),
        scenes=[scene],
    )
