"""Text grammar for polynomials.

::

    expr   := term (('+' | '-') term)*
    term   := factor (['*' | '/'] factor)*     # juxtaposition multiplies
    factor := ('+' | '-') factor | atom ['^' INT]
    atom   := INT | NAME | '(' expr ')'

Names match ``[A-Za-z][A-Za-z0-9_]*``; ``3/2*Y^2*Z0 - 1`` and ``3/2 Y^2 Z0 - 1``
parse to the same polynomial.  Division is only allowed by a nonzero constant.
"""

from __future__ import annotations

import re

from ..errors import ParseError
from .poly import Polynomial, PolyRing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r} at {pos} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r} in {self.text!r}")

    def parse(self) -> Polynomial:
        if not self.toks:
            raise ParseError("empty polynomial")
        p = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input in {self.text!r}")
        return p

    def expr(self):
        p = self.term()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                q = self.term()
                p = p + q if val == "+" else p - q
            else:
                return p

    def term(self):
        p = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                p = p * self.factor()
            elif kind == "op" and val == "/":
                self.take()
                q = self.factor()
                if not q.is_constant() or q.is_zero():
                    raise ParseError(f"division by non-constant or zero in {self.text!r}")
                p = p * (self.ring.field.one / q.constant_coefficient())
            elif kind in ("num", "name") or (kind == "op" and val == "("):
                p = p * self.factor()
            else:
                return p

    def factor(self):
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            f = self.factor()
            return -f if val == "-" else f
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, e = self.take()
            if kind != "num":
                raise ParseError(f"exponent must be a non-negative integer in {self.text!r}")
            base = base ** e
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.ring.const(val)
        if kind == "name":
            if val not in self.ring.index:
                raise ParseError(f"unknown variable {val!r}; known: {list(self.ring.names)}")
            return self.ring.gen(val)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect(")")
            return p
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    return _Parser(text, ring).parse()


def variables_in(text: str):
    """Names appearing in ``text``, in first-occurrence order."""
    seen = []
    for kind, val in tokenize(text):
        if kind == "name" and val not in seen:
            seen.append(val)
    return seen
