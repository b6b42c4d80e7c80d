"""Recursive-descent parser for polynomial and map text.

Precedence, tightest first: ``^``, unary minus, ``*``, binary ``+``/``-``.
Division is only allowed inside a numeric literal ``a/b``.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .algebra import BiPoly, FieldCtx, UniPoly
from .errors import DivisionByZero, FieldLiteralError, ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([xy])|(\^|\*|\+|-|/|\(|\)|,))")


def _tokenize(text):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("num", int(m.group(1)), start))
        elif m.group(2):
            out.append(("var", m.group(2), start))
        else:
            out.append(("op", m.group(3), start))
        pos = m.end()
    out.append(("eof", None, n))
    return out


class _Parser:
    def __init__(self, text, ctx: FieldCtx):
        self.toks = _tokenize(text)
        self.i = 0
        self.ctx = ctx

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            raise ParseError(f"expected {op!r}", t[2])
        return t

    def at(self, op):
        t = self.peek()
        return t[0] == "op" and t[1] == op

    def expr(self):
        acc = self.term()
        while self.at("+") or self.at("-"):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while self.at("*"):
            self.take()
            acc = acc * self.unary()
        return acc

    def unary(self):
        if self.at("-"):
            self.take()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.at("^"):
            self.take()
            t = self.take()
            if t[0] != "num":
                raise ParseError("exponent must be a non-negative integer", t[2])
            return base ** t[1]
        return base

    def atom(self):
        t = self.take()
        kind, val, pos = t
        if kind == "num":
            value = Fraction(val)
            if self.at("/"):
                self.take()
                d = self.take()
                if d[0] != "num":
                    raise ParseError("expected denominator", d[2])
                if d[1] == 0:
                    raise FieldLiteralError(f"zero denominator at position {d[2]}")
                value = Fraction(val, d[1])
            try:
                return BiPoly.constant(self.ctx, value)
            except DivisionByZero:
                raise FieldLiteralError(
                    f"denominator of {val}/{value.denominator} vanishes in {self.ctx} "
                    f"at position {pos}") from None
        if kind == "var":
            return BiPoly.x(self.ctx) if val == "x" else BiPoly.y(self.ctx)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "eof":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected {val!r}", pos)

    def finish(self):
        t = self.peek()
        if t[0] != "eof":
            raise ParseError(f"trailing input {t[1]!r}", t[2])


def parse_poly(text: str, ctx: FieldCtx) -> BiPoly:
    p = _Parser(text, ctx)
    out = p.expr()
    p.finish()
    return out


def parse_unipoly(text: str, ctx: FieldCtx) -> UniPoly:
    """A polynomial in y only."""
    F = parse_poly(text, ctx)
    u = F.as_unipoly_y()
    if u is None:
        raise ParseError("expected a polynomial in y only", 0)
    return u


def parse_map_expr(text: str, ctx: FieldCtx):
    from .generators import PolyMap

    p = _Parser(text, ctx)
    p.expect("(")
    P = p.expr()
    p.expect(",")
    Q = p.expr()
    p.expect(")")
    p.finish()
    return PolyMap(P, Q)


def parse_scalar(text: str, ctx: FieldCtx):
    F = parse_poly(text, ctx)
    if not F.is_constant():
        raise ParseError(f"expected a constant, got {text!r}", 0)
    return F.constant_term()
