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
from .errors import ArityError, FormulaError, FormulaSyntaxError, UnknownIdentifierError
from .evaluate import SENSOR_DEFAULTS, EvalContext, evaluate
from .parser import parse_formula
from .serializer import serialize_formula

__all__ = [
    "ArityError",
    "BinaryOp",
    "BooleanLiteral",
    "EvalContext",
    "FormulaError",
    "FormulaSyntaxError",
    "FormulaTree",
    "FunctionCall",
    "ListRef",
    "NumberLiteral",
    "PropertyRef",
    "SENSOR_DEFAULTS",
    "SensorRef",
    "TextLiteral",
    "UnaryOp",
    "UnknownIdentifierError",
    "VariableRef",
    "evaluate",
    "parse_formula",
    "serialize_formula",
]
