"""Formula tree nodes.

A formula is an immutable expression tree. The node set is closed:
literals, sensor reads, object-property reads, variable and list reads,
unary/binary operators, and calls into the fixed function vocabulary.
Structural equality is the tree identity used by round-trip tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

FormulaTree = Union[
    "NumberLiteral",
    "TextLiteral",
    "BooleanLiteral",
    "SensorRef",
    "PropertyRef",
    "VariableRef",
    "ListRef",
    "UnaryOp",
    "BinaryOp",
    "FunctionCall",
]

# Binary operator names, lowest precedence first. Comparisons are
# non-chaining in spirit but parse left-associatively so the grammar is total.
BINARY_OPS = (
    "or",
    "and",
    "equal", "not_equal", "less", "less_equal", "greater", "greater_equal",
    "add", "subtract",
    "multiply", "divide", "mod",
)

UNARY_OPS = ("negate", "not")


@dataclass(frozen=True)
class NumberLiteral:
    value: float


@dataclass(frozen=True)
class TextLiteral:
    value: str


@dataclass(frozen=True)
class BooleanLiteral:
    value: bool


@dataclass(frozen=True)
class SensorRef:
    sensor: str  # canonical lowercase id, e.g. "inclination_x"


@dataclass(frozen=True)
class PropertyRef:
    prop: str  # canonical lowercase id, e.g. "position_x"


@dataclass(frozen=True)
class VariableRef:
    name: str


@dataclass(frozen=True)
class ListRef:
    name: str


@dataclass(frozen=True)
class UnaryOp:
    op: str  # "negate" | "not"
    operand: FormulaTree


@dataclass(frozen=True)
class BinaryOp:
    op: str
    left: FormulaTree
    right: FormulaTree


@dataclass(frozen=True)
class FunctionCall:
    func: str  # canonical lowercase name from the function vocabulary
    args: tuple[FormulaTree, ...]
