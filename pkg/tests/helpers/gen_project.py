"""Random valid-project generator for round-trip, statistics, and merge tests."""

from __future__ import annotations

import random

from brickvm.fixtures.images import ball_png, dot_png, png_from_alpha, solid_png
from brickvm.formula import parse_formula
from brickvm.project import (
    Brick,
    Look,
    Project,
    ProjectHeader,
    Scene,
    Script,
    SoundRef,
    SpriteObject,
)

from .gen_formula import random_tree

MESSAGES = ("ping", "pong", "level up")

# simple bricks whose slots take arbitrary formulas
_SIMPLE_SLOTTED = (
    "Wait", "PlaceAt", "SetX", "SetY", "ChangeXBy", "ChangeYBy", "MoveSteps",
    "TurnLeft", "TurnRight", "PointInDirection", "GlideTo", "GoBackLayers",
    "SetVelocity", "SetGravity", "SetMass", "SetBounceFactor", "SetFriction",
    "SetVolume", "Vibrate", "SetSize", "ChangeSizeBy", "SetTransparency",
    "ChangeTransparencyBy", "SetBrightness", "ChangeBrightnessBy", "Say",
    "Think", "SetPenSize", "SetPenColor",
)
_SIMPLE_PLAIN = (
    "IfOnEdgeBounce", "ComeToFront", "Clone", "DeleteThisClone",
    "StopAllSounds", "NextLook", "Show", "Hide", "PenDown", "PenUp", "Stamp",
)


def _random_alpha_png(rng: random.Random) -> bytes:
    w, h = rng.randint(1, 6), rng.randint(1, 6)
    rows = [[rng.choice((0, 255)) for _ in range(w)] for _ in range(h)]
    return png_from_alpha(rows)


def _random_formula(rng: random.Random):
    return random_tree(rng, depth=rng.randint(0, 3))


def _make_brick(rng: random.Random, kind: str, project: Project) -> Brick:
    from brickvm.project import BRICK_SPECS

    spec = BRICK_SPECS[kind]
    formulas = {slot: _random_formula(rng) for slot in spec.slots}
    options = {}
    for opt in spec.options:
        if opt == "message":
            options[opt] = rng.choice(MESSAGES)
        elif opt == "variable":
            options[opt] = rng.choice(sorted(project.variables))
        elif opt == "list":
            options[opt] = rng.choice(sorted(project.lists))
        elif opt == "motion_type":
            options[opt] = rng.choice(("none", "static", "dynamic"))
        elif opt == "scene":
            options[opt] = rng.choice([s.name for s in project.scenes])
        elif opt == "text":
            options[opt] = rng.choice(("todo", "left here on purpose"))
    return Brick(kind, formulas, options)


def _gen_bricks(rng: random.Random, project: Project, obj: SpriteObject,
                budget: int, depth: int) -> list[Brick]:
    bricks: list[Brick] = []
    while budget > 0 and rng.random() < 0.8:
        roll = rng.random()
        if roll < 0.12 and depth < 2:
            opener = rng.choice(("Forever", "Repeat"))
            bricks.append(_make_brick(rng, opener, project))
            bricks.extend(_gen_bricks(rng, project, obj, budget - 2, depth + 1))
            bricks.append(_make_brick(rng, "EndOfLoop", project))
            budget -= 2
        elif roll < 0.24 and depth < 2:
            bricks.append(_make_brick(rng, "If", project))
            bricks.extend(_gen_bricks(rng, project, obj, budget - 2, depth + 1))
            if rng.random() < 0.5:
                bricks.append(_make_brick(rng, "Else", project))
                bricks.extend(_gen_bricks(rng, project, obj, budget - 3, depth + 1))
            bricks.append(_make_brick(rng, "EndOfIf", project))
            budget -= 2
        else:
            pool = list(_SIMPLE_SLOTTED + _SIMPLE_PLAIN)
            pool += ["Broadcast", "BroadcastAndWait", "Note", "SwitchScene",
                     "SetVariable", "ChangeVariable", "ShowVariable",
                     "HideVariable", "AddToList", "DeleteFromList",
                     "InsertIntoList", "ReplaceItemInList", "SetMotionType",
                     "Ask"]
            if obj.looks:
                pool.append("SetLook")
            if obj.sounds:
                pool.append("StartSound")
            kind = rng.choice(pool)
            brick = _make_brick(rng, kind, project)
            if kind == "SetLook":
                brick.options["look"] = rng.choice(obj.looks).name
            if kind == "StartSound":
                brick.options["sound"] = rng.choice(obj.sounds).name
            bricks.append(brick)
        budget -= 1
    return bricks


def _gen_script(rng: random.Random, project: Project, obj: SpriteObject) -> Script:
    hat = rng.choice(("WhenProgramStarted", "WhenTapped", "WhenBroadcastReceived",
                      "WhenPhysicalCollision", "WhenCloned"))
    message = rng.choice(MESSAGES) if hat == "WhenBroadcastReceived" else ""
    script = Script(hat, message=message)
    script.bricks = _gen_bricks(rng, project, obj, budget=rng.randint(0, 8), depth=0)
    return script


def random_project(rng: random.Random, name: str = "generated") -> Project:
    project = Project(header=ProjectHeader(
        name, rng.choice((480, 1080)), rng.choice((360, 1920))))
    project.variables = {"score": 0.0, "lives": 3.0, "greeting": "hi"}
    project.lists = {"items": [1.0, "two"], "queue": []}
    for si in range(rng.randint(1, 2)):
        scene = Scene(f"Scene {si + 1}")
        project.scenes.append(scene)
        for oi in range(rng.randint(1, 3)):
            obj = SpriteObject("Background" if oi == 0 else f"sprite {si + 1}.{oi}")
            scene.objects.append(obj)
            for li in range(rng.randint(0, 2)):
                maker = rng.choice((dot_png, lambda: solid_png(3, 2),
                                    lambda: ball_png(6),
                                    lambda: _random_alpha_png(rng)))
                obj.looks.append(Look.from_png(f"look {li + 1}", maker()))
            for sdi in range(rng.randint(0, 1)):
                obj.sounds.append(SoundRef(f"sound {sdi + 1}",
                                           bytes([rng.randrange(256)] * 4)))
    # scripts after all scenes exist so SwitchScene can target any of them
    for scene in project.scenes:
        for obj in scene.objects:
            for _ in range(rng.randint(0, 2)):
                obj.scripts.append(_gen_script(rng, project, obj))
    return project


FIGURE_SCRIPT_BRICKS = (
    ("Forever", {}),
    ("IfOnEdgeBounce", {}),
    ("PlaceAt", {"x": "X_INCLINATION * -10", "y": "Y_INCLINATION * -10"}),
    ("EndOfLoop", {}),
)


def figure_script_project() -> Project:
    """One scene, background + bouncer, the tilt-follow loop script."""
    project = Project(header=ProjectHeader("bouncer", 1080, 1920))
    bricks = [
        Brick(kind, {slot: parse_formula(text) for slot, text in slots.items()})
        for kind, slots in FIGURE_SCRIPT_BRICKS
    ]
    sprite = SpriteObject("bouncer", looks=[Look.from_png("ball", ball_png(8))],
                          scripts=[Script("WhenProgramStarted", bricks)])
    project.scenes.append(Scene("Scene 1", [SpriteObject("Background"), sprite]))
    return project
