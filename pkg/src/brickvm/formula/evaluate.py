"""Total, deterministic formula evaluation.

``evaluate`` never raises. Degenerate arithmetic follows a documented table
(docs/formula.md): division or mod by zero yields 0 and records a
diagnostic; out-of-domain math (sqrt of negatives, ln/log of non-positives,
arcsin/arccos beyond [-1, 1], negative base to a fractional power) yields 0
silently; overflow saturates to infinity. Trigonometry works in degrees.

Both operands of AND/OR are always evaluated (no short-circuit), so the
number and order of random() draws is a function of the tree shape alone;
that keeps replays and the independent oracle in lockstep.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Mapping

from ..values import Value, to_boolean, to_number, to_text, values_equal
from .ast import (
    BinaryOp,
    BooleanLiteral,
    FormulaTree,
    FunctionCall,
    ListRef,
    NumberLiteral,
    PropertyRef,
    SensorRef,
    TextLiteral,
    UnaryOp,
    VariableRef,
)

SENSOR_DEFAULTS = {
    "inclination_x": 0.0,
    "inclination_y": 0.0,
    "acceleration_x": 0.0,
    "acceleration_y": 0.0,
    "acceleration_z": 0.0,
    "loudness": 0.0,
    "compass_direction": 0.0,
    "latitude": 0.0,
    "longitude": 0.0,
    "altitude": 0.0,
    "face_detected": 0.0,
    "face_size": 0.0,
    "face_position_x": 0.0,
    "face_position_y": 0.0,
}


@dataclass
class EvalContext:
    """Everything a formula may read, plus the deterministic random source.

    ``variables`` resolves reads in scope order (the runtime passes a
    ChainMap of locals over globals). ``diagnostics`` collects
    (code, detail) pairs; the interpreter drains it into frame events.
    """

    sensors: Mapping[str, float] = field(default_factory=dict)
    properties: Mapping[str, float] = field(default_factory=dict)
    variables: Mapping[str, Value] = field(default_factory=dict)
    lists: Mapping[str, list] = field(default_factory=dict)
    rng: random.Random = field(default_factory=lambda: random.Random(0))
    diagnostics: list = field(default_factory=list)

    def diagnose(self, code: str, detail: str) -> None:
        self.diagnostics.append((code, detail))


def _round_half_up(x: float) -> float:
    if math.isnan(x) or math.isinf(x):
        return 0.0
    return float(math.floor(x + 0.5))


def _index_of(value: Value) -> int:
    return int(_round_half_up(to_number(value)))


def _eval_function(node: FunctionCall, ctx: EvalContext) -> Value:
    name = node.func
    args = [evaluate(a, ctx) for a in node.args]

    if name == "random":
        a, b = to_number(args[0]), to_number(args[1])
        lo, hi = (a, b) if a <= b else (b, a)
        return lo + ctx.rng.random() * (hi - lo)
    if name == "join":
        return to_text(args[0]) + to_text(args[1])
    if name == "length":
        return float(len(to_text(args[0])))
    if name == "letter":
        s = to_text(args[1])
        i = _index_of(args[0])
        return s[i - 1] if 1 <= i <= len(s) else ""
    if name == "element":
        items = _list_items(node.args[1], args[1], ctx)
        i = _index_of(args[0])
        return items[i - 1] if 1 <= i <= len(items) else ""
    if name == "contains":
        items = _list_items(node.args[0], args[0], ctx)
        return any(values_equal(item, args[1]) for item in items)
    if name == "number_of_items":
        return float(len(_list_items(node.args[0], args[0], ctx)))

    x = to_number(args[0])
    if name in ("sin", "cos", "tan") and not math.isfinite(x):
        return 0.0
    if name == "sin":
        return math.sin(math.radians(x))
    if name == "cos":
        return math.cos(math.radians(x))
    if name == "tan":
        return math.tan(math.radians(x))
    if name == "arcsin":
        return math.degrees(math.asin(x)) if -1.0 <= x <= 1.0 else 0.0
    if name == "arccos":
        return math.degrees(math.acos(x)) if -1.0 <= x <= 1.0 else 0.0
    if name == "arctan":
        return math.degrees(math.atan(x))
    if name == "ln":
        return math.log(x) if x > 0.0 else 0.0
    if name == "log":
        return math.log10(x) if x > 0.0 else 0.0
    if name == "abs":
        return abs(x)
    if name == "round":
        return _round_half_up(x)
    if name == "floor":
        return float(math.floor(x)) if math.isfinite(x) else 0.0
    if name == "ceil":
        return float(math.ceil(x)) if math.isfinite(x) else 0.0
    if name == "sqrt":
        return math.sqrt(x) if x >= 0.0 else 0.0
    if name == "exp":
        try:
            return math.exp(x)
        except OverflowError:
            return math.inf

    y = to_number(args[1])
    if name == "power":
        if x < 0.0 and y != math.floor(y):
            return 0.0
        try:
            r = math.pow(x, y)
        except (OverflowError, ValueError):
            return math.inf if abs(x) > 1.0 else 0.0
        except ZeroDivisionError:
            return 0.0
        return r
    if name == "mod":
        return _modulo(x, y, ctx)
    if name == "min":
        return min(x, y)
    if name == "max":
        return max(x, y)
    raise AssertionError(f"unhandled function {name}")


def _list_items(arg_node: FormulaTree, arg_value: Value, ctx: EvalContext) -> list:
    # list-typed arguments must be written as [name]; anything else is
    # treated as a one-item list of its value, keeping evaluation total
    if isinstance(arg_node, ListRef):
        items = ctx.lists.get(arg_node.name)
        if items is None:
            ctx.diagnose("unknown_list", arg_node.name)
            return []
        return items
    return [arg_value]


def _modulo(a: float, b: float, ctx: EvalContext) -> float:
    if b == 0.0:
        ctx.diagnose("division_by_zero", f"{to_text(a)} mod 0")
        return 0.0
    if math.isnan(a) or math.isnan(b) or math.isinf(a) or math.isinf(b):
        return 0.0
    return math.fmod(math.fmod(a, b) + b, b)


_BINARY_NUMERIC: dict[str, Callable[[float, float], float]] = {
    "add": lambda a, b: a + b,
    "subtract": lambda a, b: a - b,
    "multiply": lambda a, b: a * b,
}


def evaluate(tree: FormulaTree, ctx: EvalContext) -> Value:
    if isinstance(tree, NumberLiteral):
        return tree.value
    if isinstance(tree, TextLiteral):
        return tree.value
    if isinstance(tree, BooleanLiteral):
        return tree.value
    if isinstance(tree, SensorRef):
        try:
            return float(ctx.sensors[tree.sensor])
        except KeyError:
            return SENSOR_DEFAULTS.get(tree.sensor, 0.0)
    if isinstance(tree, PropertyRef):
        try:
            return float(ctx.properties[tree.prop])
        except KeyError:
            return 0.0
    if isinstance(tree, VariableRef):
        try:
            return ctx.variables[tree.name]
        except KeyError:
            ctx.diagnose("unknown_variable", tree.name)
            return 0.0
    if isinstance(tree, ListRef):
        items = ctx.lists.get(tree.name)
        if items is None:
            ctx.diagnose("unknown_list", tree.name)
            return ""
        return " ".join(to_text(item) for item in items)
    if isinstance(tree, UnaryOp):
        v = evaluate(tree.operand, ctx)
        if tree.op == "negate":
            return -to_number(v)
        return not to_boolean(v)
    if isinstance(tree, BinaryOp):
        left = evaluate(tree.left, ctx)
        right = evaluate(tree.right, ctx)
        op = tree.op
        fn = _BINARY_NUMERIC.get(op)
        if fn is not None:
            return fn(to_number(left), to_number(right))
        if op == "divide":
            b = to_number(right)
            if b == 0.0:
                ctx.diagnose("division_by_zero", f"{to_text(left)} / 0")
                return 0.0
            return to_number(left) / b
        if op == "mod":
            return _modulo(to_number(left), to_number(right), ctx)
        if op == "equal":
            return values_equal(left, right)
        if op == "not_equal":
            return not values_equal(left, right)
        if op == "less":
            return to_number(left) < to_number(right)
        if op == "less_equal":
            return to_number(left) <= to_number(right)
        if op == "greater":
            return to_number(left) > to_number(right)
        if op == "greater_equal":
            return to_number(left) >= to_number(right)
        if op == "and":
            return to_boolean(left) and to_boolean(right)
        if op == "or":
            return to_boolean(left) or to_boolean(right)
    if isinstance(tree, FunctionCall):
        return _eval_function(tree, ctx)
    raise TypeError(f"not a formula tree: {tree!r}")
