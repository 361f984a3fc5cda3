"""Text forms of types and weight vectors.

Types:   "(4;2,1)" or "(2,2;1,1,0/0,1,1)"; whitespace is ignored and negative
entries are reduced modulo the row order.
Weights: "2,3,4".
"""

from __future__ import annotations

import math
import re

from .errors import DomainError, UsageError
from .quotient import QuotientType

_TOKEN = re.compile(r"(-?\d+)|(\S)")


class ParseError(UsageError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


def _tokens(s):
    for m in _TOKEN.finditer(s):
        if m.group(1) is not None:
            yield int(m.group(1)), m.start()
        else:
            yield m.group(2), m.start()


class _Cursor:
    def __init__(self, s):
        self.items = list(_tokens(s))
        self.i = 0
        self.end = len(s)

    def peek(self):
        return self.items[self.i][0] if self.i < len(self.items) else None

    def pos(self):
        return self.items[self.i][1] if self.i < len(self.items) else self.end

    def take(self, expected=None):
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of input, expected {expected or 'more'}", self.pos())
        if expected == "int":
            if not isinstance(tok, int):
                raise ParseError(f"expected an integer, found {tok!r}", self.pos())
        elif expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r}, found {tok!r}", self.pos())
        self.i += 1
        return tok

    def int_list(self):
        values = [self.take("int")]
        while self.peek() == ",":
            self.take(",")
            values.append(self.take("int"))
        return values


def parse_type_expr(s: str) -> QuotientType:
    cur = _Cursor(s)
    cur.take("(")
    orders = cur.int_list()
    cur.take(";")
    rows = [cur.int_list()]
    while cur.peek() == "/":
        cur.take("/")
        rows.append(cur.int_list())
    cur.take(")")
    if cur.peek() is not None:
        raise ParseError(f"trailing input {cur.peek()!r}", cur.pos())
    if len(rows) != len(orders):
        raise ParseError(f"{len(orders)} orders but {len(rows)} weight rows", 0)
    if len({len(r) for r in rows}) != 1:
        raise ParseError("weight rows have different lengths", 0)
    if any(d <= 0 for d in orders):
        raise DomainError(f"group orders must be positive, got {orders}")
    return QuotientType(tuple(orders), tuple(tuple(r) for r in rows))


def parse_int_list(s: str) -> list:
    cur = _Cursor(s)
    values = cur.int_list()
    if cur.peek() is not None:
        raise ParseError(f"unexpected {cur.peek()!r}", cur.pos())
    return values


def parse_weights(s: str):
    """Comma separated positive coprime integers, as a WeightVector."""
    from .wps import WeightVector

    values = parse_int_list(s)
    if any(v <= 0 for v in values):
        raise DomainError(f"weights must be positive, got {values}")
    g = math.gcd(*values)
    if g != 1:
        raise DomainError(
            f"weights {values} have common factor {g}; divide it out first")
    return WeightVector(tuple(values))
