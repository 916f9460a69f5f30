"""Recursive-descent parser for rational expressions in one variable.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/' | <juxtaposition>) unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' exponent)?
    atom   := INTEGER | VAR | '(' expr ')' | '{' expr '}'

``VAR`` is ``n`` or ``x``.  Juxtaposition binds like ``*`` so ``2n``,
``8(n-1)`` and ``(2n-1)(n^2-n+1)`` all parse.
"""
from __future__ import annotations

import re

from .exact_arith import PolyQ, RatFunc

_TOKEN = re.compile(r"\s*(?:(\d+)|([nx])|(\^|\*\*|[-+*/(){}]))")


class ExprSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int, text: str = ""):
        super().__init__(f"{msg} at position {pos}" + (f" in {text!r}" if text else ""))
        self.pos = pos
        self.msg = msg


def _tokenize(text: str, offset: int = 0):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = len(text) - len(text[pos:].lstrip())
            raise ExprSyntaxError(f"unexpected character {text[bad]!r}", offset + bad, text)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("num", int(m.group(1)), offset + start))
        elif m.group(2):
            tokens.append(("var", m.group(2), offset + start))
        else:
            op = m.group(3)
            tokens.append(("op", "^" if op == "**" else op, offset + start))
        pos = m.end()
    tokens.append(("end", None, offset + len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, offset: int):
        self.text = text
        self.toks = _tokenize(text, offset)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg: str):
        raise ExprSyntaxError(msg, self.peek()[2], self.text)

    def expect(self, op: str):
        kind, val, _ = self.peek()
        if kind != "op" or val != op:
            self.fail(f"expected {op!r}")
        self.take()

    def parse(self) -> RatFunc:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        out = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected token")
        return out

    def expr(self) -> RatFunc:
        acc = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if val == "+" else acc - rhs
            else:
                return acc

    def _starts_atom(self) -> bool:
        kind, val, _ = self.peek()
        return kind in ("num", "var") or (kind == "op" and val in "({")

    def term(self) -> RatFunc:
        acc = self.unary()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                rhs = self.unary()
                if val == "*":
                    acc = acc * rhs
                else:
                    if rhs.is_zero():
                        self.fail("division by zero")
                    acc = acc / rhs
            elif self._starts_atom():
                acc = acc * self.power()
            else:
                return acc

    def unary(self) -> RatFunc:
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            inner = self.unary()
            return -inner if val == "-" else inner
        return self.power()

    def power(self) -> RatFunc:
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, _ = self.peek()
            if kind == "num":
                self.take()
                return base**val
            if kind == "op" and val in "({":
                close = ")" if val == "(" else "}"
                self.take()
                k, e, _ = self.peek()
                if k != "num":
                    self.fail("exponent must be a nonnegative integer")
                self.take()
                self.expect(close)
                return base**e
            self.fail("exponent must be a nonnegative integer")
        return base

    def atom(self) -> RatFunc:
        kind, val, _ = self.peek()
        if kind == "num":
            self.take()
            return RatFunc(PolyQ.const(val))
        if kind == "var":
            self.take()
            return RatFunc(PolyQ.x())
        if kind == "op" and val in "({":
            close = ")" if val == "(" else "}"
            self.take()
            inner = self.expr()
            self.expect(close)
            return inner
        self.fail("expected a number, variable or '('")


def parse_ratfunc(text: str, offset: int = 0) -> RatFunc:
    """Parse a rational function of ``n`` (or ``x``)."""
    return _Parser(text, offset).parse()


def parse_poly(text: str, offset: int = 0) -> PolyQ:
    """Parse a polynomial; division is allowed only by constants."""
    rf = parse_ratfunc(text, offset)
    if not rf.is_polynomial():
        raise ExprSyntaxError("expected a polynomial, got a rational function", offset, text)
    return rf.num
