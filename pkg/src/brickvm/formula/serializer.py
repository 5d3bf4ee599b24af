"""FormulaTree -> canonical text.

The canonical surface form uses ASCII operator signs, single spaces around
binary operators, lowercase function names, uppercase sensor/property names,
and the minimal parenthesization that survives a round trip:
``parse_formula(serialize_formula(t)) == t`` for every valid tree.
"""

from __future__ import annotations

from ..values import to_text
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
from .vocabulary import PROPERTY_SURFACE, SENSOR_SURFACE

_OP_SURFACE = {
    "or": "OR",
    "and": "AND",
    "equal": "=",
    "not_equal": "!=",
    "less": "<",
    "less_equal": "<=",
    "greater": ">",
    "greater_equal": ">=",
    "add": "+",
    "subtract": "-",
    "multiply": "*",
    "divide": "/",
    "mod": "mod",
}

# precedence levels; higher binds tighter
_PREC = {
    "or": 1,
    "and": 2,
    "equal": 3, "not_equal": 3, "less": 3, "less_equal": 3,
    "greater": 3, "greater_equal": 3,
    "add": 4, "subtract": 4,
    "multiply": 5, "divide": 5, "mod": 5,
}
_PREC_UNARY = 6
_PREC_ATOM = 7


def _precedence(tree: FormulaTree) -> int:
    if isinstance(tree, BinaryOp):
        return _PREC[tree.op]
    if isinstance(tree, UnaryOp):
        return _PREC_UNARY
    if isinstance(tree, NumberLiteral) and tree.value < 0:
        # a negative literal prints with a leading minus: unary strength
        return _PREC_UNARY
    return _PREC_ATOM


def _escape_text(s: str) -> str:
    return s.replace("\\", "\\\\").replace("'", "\\'")


def _render(tree: FormulaTree) -> str:
    if isinstance(tree, NumberLiteral):
        return to_text(tree.value)
    if isinstance(tree, BooleanLiteral):
        return "TRUE" if tree.value else "FALSE"
    if isinstance(tree, TextLiteral):
        return f"'{_escape_text(tree.value)}'"
    if isinstance(tree, VariableRef):
        return f'"{tree.name}"'
    if isinstance(tree, ListRef):
        return f"[{tree.name}]"
    if isinstance(tree, SensorRef):
        return SENSOR_SURFACE[tree.sensor]
    if isinstance(tree, PropertyRef):
        return PROPERTY_SURFACE[tree.prop]
    if isinstance(tree, FunctionCall):
        args = ", ".join(_render(a) for a in tree.args)
        return f"{tree.func}({args})"
    if isinstance(tree, UnaryOp):
        inner = _child(tree.operand, _PREC_UNARY, right_of_same=False)
        return f"-{inner}" if tree.op == "negate" else f"NOT {inner}"
    if isinstance(tree, BinaryOp):
        prec = _PREC[tree.op]
        left = _child(tree.left, prec, right_of_same=False)
        right = _child(tree.right, prec, right_of_same=True)
        return f"{left} {_OP_SURFACE[tree.op]} {right}"
    raise TypeError(f"not a formula tree: {tree!r}")


def _child(child: FormulaTree, parent_prec: int, right_of_same: bool) -> str:
    text = _render(child)
    prec = _precedence(child)
    # all binary operators are left-associative, so an equal-precedence
    # child on the right needs parentheses to re-parse identically
    if prec < parent_prec or (right_of_same and prec == parent_prec):
        return f"({text})"
    return text


def serialize_formula(tree: FormulaTree) -> str:
    return _render(tree)
