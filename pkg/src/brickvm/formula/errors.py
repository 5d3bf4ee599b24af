"""Errors raised by formula parsing.

Evaluation never raises; only the parser does, and always with the
character offset into the source text.
"""

from __future__ import annotations


class FormulaError(Exception):
    pass


class FormulaSyntaxError(FormulaError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at {position})")
        self.position = position


class UnknownIdentifierError(FormulaError):
    def __init__(self, name: str, position: int):
        super().__init__(f"unknown identifier {name!r} (at {position})")
        self.name = name
        self.position = position


class ArityError(FormulaError):
    def __init__(self, func: str, expected: int, got: int, position: int):
        super().__init__(
            f"{func}() takes {expected} argument(s), got {got} (at {position})"
        )
        self.func = func
        self.expected = expected
        self.got = got
        self.position = position
