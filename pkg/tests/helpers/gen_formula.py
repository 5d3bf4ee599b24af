"""Seeded random formula-tree generator covering the whole vocabulary.

Generates canonical trees only: a minus sign on a number lives in the
literal itself, never as a negate node, matching what the parser produces.
"""

from __future__ import annotations

import random

from brickvm.formula.ast import (
    BinaryOp,
    BooleanLiteral,
    FunctionCall,
    ListRef,
    NumberLiteral,
    PropertyRef,
    SensorRef,
    TextLiteral,
    UnaryOp,
    VariableRef,
)
from brickvm.formula.ast import BINARY_OPS
from brickvm.formula.vocabulary import FUNCTIONS, PROPERTY_SURFACE, SENSOR_SURFACE

VARIABLE_NAMES = ("score", "lives", "greeting")
LIST_NAMES = ("items", "queue")

_TEXTS = ("", "abc", "3.5", "true", "-7", "hello world", "Infinity")
_NUMBERS = (0.0, 1.0, -1.0, 2.5, -10.0, 0.5, 90.0, 360.0, 1e6, -0.125, 7.0)


def random_leaf(rng: random.Random):
    kind = rng.randrange(6)
    if kind == 0:
        return NumberLiteral(rng.choice(_NUMBERS))
    if kind == 1:
        return TextLiteral(rng.choice(_TEXTS))
    if kind == 2:
        return BooleanLiteral(rng.random() < 0.5)
    if kind == 3:
        return SensorRef(rng.choice(sorted(SENSOR_SURFACE)))
    if kind == 4:
        return PropertyRef(rng.choice(sorted(PROPERTY_SURFACE)))
    return VariableRef(rng.choice(VARIABLE_NAMES))


def random_tree(rng: random.Random, depth: int):
    if depth <= 0 or rng.random() < 0.25:
        return random_leaf(rng)
    kind = rng.randrange(10)
    if kind < 5:
        op = rng.choice(BINARY_OPS)
        return BinaryOp(op, random_tree(rng, depth - 1), random_tree(rng, depth - 1))
    if kind < 7:
        inner = random_tree(rng, depth - 1)
        if rng.random() < 0.5:
            if isinstance(inner, NumberLiteral):
                return NumberLiteral(-inner.value) if inner.value != 0 else inner
            return UnaryOp("negate", inner)
        return UnaryOp("not", inner)
    name = rng.choice(sorted(FUNCTIONS))
    arity = FUNCTIONS[name]
    args = []
    for slot in range(arity):
        # element/contains/number_of_items take a list in a fixed slot
        if (name, slot) in (("element", 1), ("contains", 0), ("number_of_items", 0)):
            args.append(ListRef(rng.choice(LIST_NAMES)))
        else:
            args.append(random_tree(rng, depth - 1))
    return FunctionCall(name, tuple(args))


def standard_env(seed: int) -> dict:
    return {
        "sensors": {"inclination_x": 12.0, "inclination_y": -4.5, "loudness": 55.0},
        "properties": {"position_x": 3.0, "position_y": -8.0, "direction": 90.0},
        "variables": {"score": 42.0, "lives": 3.0, "greeting": "hi"},
        "lists": {"items": [1.0, 2.0, "three"], "queue": []},
        "rng": random.Random(seed),
    }
