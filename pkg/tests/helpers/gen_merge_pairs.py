"""Seeded random projects drawn from a shared element pool.

Unlike gen_project.random_project, two draws from this pool overlap on
identical elements and collide on same-named-but-different elements,
which is exactly the terrain the merge laws quantify over.
"""

from __future__ import annotations

import copy
import random

from brickvm.fixtures.images import ball_png, solid_png
from brickvm.formula.ast import NumberLiteral, VariableRef
from brickvm.project.model import (
    Brick,
    Look,
    Project,
    ProjectHeader,
    Scene,
    SoundRef,
    Script,
    SpriteObject,
)

_BG_LOOKS = [
    Look.from_png("paper", solid_png(8, 8, (250, 250, 240))),
    Look.from_png("night", solid_png(8, 8, (10, 10, 40))),
]

_DOT_LOOKS = [
    Look.from_png("dot", ball_png(6, (220, 60, 60))),
    Look.from_png("dot", ball_png(6, (60, 60, 220))),
]


def _num(v: float) -> NumberLiteral:
    return NumberLiteral(float(v))


def _spin_script(degrees: float) -> Script:
    return Script("WhenProgramStarted", [
        Brick("Forever"),
        Brick("TurnRight", formulas={"degrees": _num(degrees)}),
        Brick("EndOfLoop"),
    ])


def _counter_script() -> Script:
    return Script("WhenProgramStarted", [
        Brick("Forever"),
        Brick("ChangeVariable", formulas={"delta": _num(1)},
              options={"variable": "n"}),
        Brick("Wait", formulas={"seconds": VariableRef("n")}),
        Brick("EndOfLoop"),
    ])


def _background(variant: int) -> SpriteObject:
    return SpriteObject("Background", looks=[copy.deepcopy(_BG_LOOKS[variant % 2])])


def _object(recipe: int) -> SpriteObject:
    # Recipes 1/2 share the name "ball" with different looks; 3/4 share
    # "pad" with different scripts. Those pairs force rename handling.
    if recipe == 0:
        return SpriteObject("beep", sounds=[SoundRef("beep", b"\x01\x02\x03")],
                            scripts=[Script("WhenTapped", [
                                Brick("StartSound", options={"sound": "beep"})])])
    if recipe == 1:
        return SpriteObject("ball", looks=[copy.deepcopy(_DOT_LOOKS[0])],
                            scripts=[_spin_script(5)])
    if recipe == 2:
        return SpriteObject("ball", looks=[copy.deepcopy(_DOT_LOOKS[1])],
                            scripts=[_spin_script(5)])
    if recipe == 3:
        return SpriteObject("pad", looks=[copy.deepcopy(_DOT_LOOKS[0])],
                            scripts=[_spin_script(2)])
    if recipe == 4:
        return SpriteObject("pad", looks=[copy.deepcopy(_DOT_LOOKS[0])],
                            scripts=[_spin_script(7)])
    if recipe == 5:
        return SpriteObject("tally", variables={"n": 0.0},
                            scripts=[_counter_script()])
    return SpriteObject("drifter", scripts=[Script("WhenProgramStarted", [
        Brick("GlideTo", formulas={
            "x": _num(40 * recipe), "y": _num(-30), "seconds": _num(0.5)}),
    ])])


_GLOBALS = [("score", 0.0), ("lives", 3.0), ("title", "hello")]
_GLOBAL_LISTS = [("log", []), ("rolls", [1.0, 2.0])]


# Recipes grouped by object name; one pick per slot keeps names unique
# within a single project while letting two projects collide.
_NAME_SLOTS = [(0,), (1, 2), (3, 4), (5,), (6,)]


def _pick_recipes(rng: random.Random, count: int) -> list[int]:
    slots = rng.sample(_NAME_SLOTS, count)
    return sorted(rng.choice(slot) for slot in slots)


def pooled_project(rng: random.Random) -> Project:
    project = Project(ProjectHeader("generated", 1080, 1920))
    scene = Scene("Main", objects=[_background(rng.randrange(2))])
    for recipe in _pick_recipes(rng, rng.randint(1, 4)):
        scene.objects.append(_object(recipe))
    project.scenes.append(scene)
    if rng.random() < 0.4:
        bonus = Scene("Bonus", objects=[_background(rng.randrange(2))])
        if rng.random() < 0.7:
            bonus.objects.append(_object(rng.randrange(7)))
        project.scenes.append(bonus)

    for name, value in _GLOBALS:
        if rng.random() < 0.5:
            project.variables[name] = value
    for name, items in _GLOBAL_LISTS:
        if rng.random() < 0.4:
            project.lists[name] = list(items)
    return project
