"""Runtime values and their total coercion rules.

A value is a plain Python ``float``, ``str``, or ``bool``; there is no wrapper
type. Every coercion below is total: it never raises, whatever it is fed.
The rules are part of the language contract and are shared by the evaluator,
the bricks, and the wire layer.

Coercions:

* text -> number: parse a leading decimal literal (optional sign, digits,
  fraction, exponent), ignoring leading whitespace; anything else is 0.
* boolean -> number: true = 1, false = 0.
* number -> text: shortest decimal that round-trips; integral values drop the
  trailing ``.0`` (``5.0`` renders as ``"5"``). Non-finite values render as
  ``"Infinity"`` / ``"-Infinity"`` / ``"NaN"``.
* text -> boolean: the exact word ``"true"`` (any case) is true, everything
  else falls back to numeric coercion != 0.
"""

from __future__ import annotations

import math
import re
from typing import Union

Value = Union[float, str, bool]

# Leading decimal literal: sign, then digits with optional fraction or a bare
# fraction, then an optional exponent. Matched at the start, rest is ignored.
_LEADING_NUMBER = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")


def is_number(v: Value) -> bool:
    return isinstance(v, float) or (isinstance(v, int) and not isinstance(v, bool))


def to_number(v: Value) -> float:
    if isinstance(v, bool):
        return 1.0 if v else 0.0
    if isinstance(v, (int, float)):
        return float(v)
    m = _LEADING_NUMBER.match(v.lstrip())
    if not m:
        return 0.0
    try:
        return float(m.group(0))
    except (ValueError, OverflowError):
        return 0.0


def to_text(v: Value) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, str):
        return v
    f = float(v)
    if math.isnan(f):
        return "NaN"
    if math.isinf(f):
        return "Infinity" if f > 0 else "-Infinity"
    if f == int(f) and abs(f) < 1e16:
        return str(int(f))
    return repr(f)


def to_boolean(v: Value) -> bool:
    if isinstance(v, bool):
        return v
    if isinstance(v, str):
        if v.lower() == "true":
            return True
        return to_number(v) != 0.0
    return float(v) != 0.0


def values_equal(a: Value, b: Value) -> bool:
    """Equality as the ``=`` operator sees it.

    Two texts compare as exact strings; any other pairing compares
    numerically after coercion.
    """
    if isinstance(a, str) and isinstance(b, str):
        return a == b
    return to_number(a) == to_number(b)
