"""Formula text -> FormulaTree.

Grammar (EBNF mirrored in docs/formula.md):

    formula        = or_expr ;
    or_expr        = and_expr { "OR" and_expr } ;
    and_expr       = comparison { "AND" comparison } ;
    comparison     = additive { comp_op additive } ;
    comp_op        = "=" | "!=" | "<" | "<=" | ">" | ">=" ;
    additive       = multiplicative { ("+" | "-") multiplicative } ;
    multiplicative = unary { ("*" | "/" | "mod") unary } ;
    unary          = ("-" | "NOT") unary | primary ;
    primary        = number | text | variable | list | identifier
                   | function "(" formula { "," formula } ")"
                   | "(" formula ")" ;

Surface notes:

* ``×`` and ``−`` (the typographic signs) are synonyms for ``*`` and ``-``;
  ``≤ ≥ ≠`` for ``<= >= !=``. Keywords and identifiers are case-insensitive.
* Text literals are single-quoted with backslash escapes; variable reads are
  double-quoted names; list reads are bracketed names. Bare identifiers must
  belong to the closed vocabulary (sensors, object properties, constants).
* ``-`` applied directly to a number literal folds into a negative literal,
  so ``X_INCLINATION * -10`` multiplies by the literal -10.
* ``mod`` in operand position must be a function call; in operator position
  it is the infix operator with multiplicative precedence.
"""

from __future__ import annotations

from dataclasses import dataclass

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
from .errors import ArityError, FormulaSyntaxError, UnknownIdentifierError
from .vocabulary import FUNCTIONS, PROPERTY_ALIASES, SENSOR_ALIASES

_SYNONYMS = {"×": "*", "−": "-", "≤": "<=", "≥": ">=", "≠": "!="}

_COMPARISONS = {
    "=": "equal",
    "!=": "not_equal",
    "<": "less",
    "<=": "less_equal",
    ">": "greater",
    ">=": "greater_equal",
}

_ADDITIVE = {"+": "add", "-": "subtract"}
_MULTIPLICATIVE = {"*": "multiply", "/": "divide", "mod": "mod"}


@dataclass(frozen=True)
class _Token:
    kind: str  # num | text | var | list | ident | op | lparen | rparen | comma | end
    value: str
    position: int
    number: float = 0.0


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        c = _SYNONYMS.get(c, c)
        if c in ("<=", ">=", "!="):
            # a typographic comparison sign mapped to its two-char form
            tokens.append(_Token("op", c, i))
            i += 1
            continue
        if c.isdigit() or (c == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            while j < n and (text[j].isdigit() or text[j] == "."):
                j += 1
            # exponent only when digits follow; otherwise 'e' starts an identifier
            if j < n and text[j] in "eE":
                k = j + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k < n and text[k].isdigit():
                    while k < n and text[k].isdigit():
                        k += 1
                    j = k
            raw = text[i:j]
            try:
                num = float(raw)
            except ValueError:
                raise FormulaSyntaxError(f"bad number {raw!r}", i)
            tokens.append(_Token("num", raw, i, num))
            i = j
            continue
        if c == "'":
            j = i + 1
            out = []
            while j < n:
                if text[j] == "\\" and j + 1 < n:
                    out.append(text[j + 1])
                    j += 2
                    continue
                if text[j] == "'":
                    break
                out.append(text[j])
                j += 1
            if j >= n:
                raise FormulaSyntaxError("unterminated text literal", i)
            tokens.append(_Token("text", "".join(out), i))
            i = j + 1
            continue
        if c == '"':
            j = text.find('"', i + 1)
            if j < 0:
                raise FormulaSyntaxError("unterminated variable name", i)
            tokens.append(_Token("var", text[i + 1 : j], i))
            i = j + 1
            continue
        if c == "[":
            j = text.find("]", i + 1)
            if j < 0:
                raise FormulaSyntaxError("unterminated list name", i)
            tokens.append(_Token("list", text[i + 1 : j], i))
            i = j + 1
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("ident", text[i:j].lower(), i))
            i = j
            continue
        two = _SYNONYMS.get(text[i : i + 2], text[i : i + 2])
        if two in ("<=", ">=", "!="):
            tokens.append(_Token("op", two, i))
            i += 2
            continue
        if c in "+-*/=<>":
            tokens.append(_Token("op", c, i))
            i += 1
            continue
        if c == "(":
            tokens.append(_Token("lparen", c, i))
            i += 1
            continue
        if c == ")":
            tokens.append(_Token("rparen", c, i))
            i += 1
            continue
        if c == ",":
            tokens.append(_Token("comma", c, i))
            i += 1
            continue
        raise FormulaSyntaxError(f"unexpected character {text[i]!r}", i)
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise FormulaSyntaxError(f"expected {what}", tok.position)
        return self.advance()

    def at_keyword(self, word: str) -> bool:
        tok = self.peek()
        return tok.kind == "ident" and tok.value == word

    # in operator position a 'mod' token is always the infix operator;
    # only operand position (primary) treats it as the two-argument function
    def at_infix_mod(self) -> bool:
        return self.at_keyword("mod")

    def parse(self) -> FormulaTree:
        tree = self.or_expr()
        tok = self.peek()
        if tok.kind != "end":
            raise FormulaSyntaxError("unexpected trailing input", tok.position)
        return tree

    def or_expr(self) -> FormulaTree:
        left = self.and_expr()
        while self.at_keyword("or"):
            self.advance()
            left = BinaryOp("or", left, self.and_expr())
        return left

    def and_expr(self) -> FormulaTree:
        left = self.comparison()
        while self.at_keyword("and"):
            self.advance()
            left = BinaryOp("and", left, self.comparison())
        return left

    def comparison(self) -> FormulaTree:
        left = self.additive()
        while self.peek().kind == "op" and self.peek().value in _COMPARISONS:
            op = _COMPARISONS[self.advance().value]
            left = BinaryOp(op, left, self.additive())
        return left

    def additive(self) -> FormulaTree:
        left = self.multiplicative()
        while self.peek().kind == "op" and self.peek().value in _ADDITIVE:
            op = _ADDITIVE[self.advance().value]
            left = BinaryOp(op, left, self.multiplicative())
        return left

    def multiplicative(self) -> FormulaTree:
        left = self.unary()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.value in ("*", "/"):
                op = _MULTIPLICATIVE[self.advance().value]
                left = BinaryOp(op, left, self.unary())
            elif self.at_infix_mod():
                self.advance()
                left = BinaryOp("mod", left, self.unary())
            else:
                return left

    def unary(self) -> FormulaTree:
        tok = self.peek()
        if tok.kind == "op" and tok.value == "-":
            self.advance()
            operand = self.unary()
            if isinstance(operand, NumberLiteral):
                return NumberLiteral(-operand.value)
            return UnaryOp("negate", operand)
        if tok.kind == "op" and tok.value == "+":
            self.advance()
            return self.unary()
        if self.at_keyword("not"):
            self.advance()
            return UnaryOp("not", self.unary())
        return self.primary()

    def primary(self) -> FormulaTree:
        tok = self.advance()
        if tok.kind == "num":
            return NumberLiteral(tok.number)
        if tok.kind == "text":
            return TextLiteral(tok.value)
        if tok.kind == "var":
            return VariableRef(tok.value)
        if tok.kind == "list":
            return ListRef(tok.value)
        if tok.kind == "lparen":
            inner = self.or_expr()
            self.expect("rparen", "')'")
            return inner
        if tok.kind == "ident":
            return self.identifier(tok)
        raise FormulaSyntaxError("expected a value", tok.position)

    def identifier(self, tok: _Token) -> FormulaTree:
        name = tok.value
        if self.peek().kind == "lparen":
            if name not in FUNCTIONS:
                raise UnknownIdentifierError(name, tok.position)
            self.advance()
            args: list[FormulaTree] = []
            if self.peek().kind != "rparen":
                args.append(self.or_expr())
                while self.peek().kind == "comma":
                    self.advance()
                    args.append(self.or_expr())
            self.expect("rparen", "')'")
            expected = FUNCTIONS[name]
            if len(args) != expected:
                raise ArityError(name, expected, len(args), tok.position)
            return FunctionCall(name, tuple(args))
        if name == "true":
            return BooleanLiteral(True)
        if name == "false":
            return BooleanLiteral(False)
        if name == "pi":
            import math

            return NumberLiteral(math.pi)
        if name in SENSOR_ALIASES:
            return SensorRef(SENSOR_ALIASES[name])
        if name in PROPERTY_ALIASES:
            return PropertyRef(PROPERTY_ALIASES[name])
        if name in FUNCTIONS:
            raise FormulaSyntaxError(f"{name} needs arguments", tok.position)
        raise UnknownIdentifierError(name, tok.position)


def parse_formula(text: str) -> FormulaTree:
    return _Parser(text).parse()
