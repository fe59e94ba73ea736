"""Text form of *-polynomials.

Grammar (whitespace is ignored)::

    poly   := ['+'|'-'] term (('+'|'-') term)*
    term   := rational factor* | factor+
    factor := atom ('^' nat | '~')*
    atom   := var | '[' poly (',' poly)+ ']' | '(' poly ')'
    var    := ('y'|'z') nat

Juxtaposition is the product, brackets are left-normed commutators and a
postfix ``~`` applies the involution.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .free import Kind, NCPoly, Variable, commutator, involute

__all__ = ["ParseError", "parse_poly", "format_poly", "format_word"]


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int, text: str = ""):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos
        self.text = text


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[yz]\d+)|(?P<op>[-+\[\](),^~]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), start))
        pos = m.end()
    toks.append(("end", "", n))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value: str):
        t = self.take()
        if t[1] != value:
            raise ParseError(f"expected {value!r}, found {t[1] or 'end of input'!r}", t[2], self.text)
        return t

    def poly(self) -> NCPoly:
        sign = 1
        t = self.peek()
        if t[1] in "+-" and t[0] == "op":
            self.take()
            sign = -1 if t[1] == "-" else 1
        acc = self.term() * sign
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in ("+", "-"):
                self.take()
                term = self.term()
                acc = acc + term if t[1] == "+" else acc - term
            else:
                return acc

    def _starts_factor(self, t) -> bool:
        return t[0] == "var" or (t[0] == "op" and t[1] in "[(")

    def term(self) -> NCPoly:
        t = self.peek()
        coeff = Fraction(1)
        have_num = False
        if t[0] == "num":
            self.take()
            coeff = Fraction(t[1])
            have_num = True
        if not self._starts_factor(self.peek()):
            if have_num:
                return NCPoly.unit(coeff)
            t = self.peek()
            raise ParseError(f"expected a term, found {t[1] or 'end of input'!r}", t[2], self.text)
        acc = NCPoly.unit(coeff)
        while self._starts_factor(self.peek()):
            acc = acc * self.factor()
        return acc

    def factor(self) -> NCPoly:
        base = self.atom()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "^":
                self.take()
                e = self.take()
                if e[0] != "num" or "/" in e[1]:
                    raise ParseError("exponent must be a natural number", e[2], self.text)
                base = base ** int(e[1])
            elif t[0] == "op" and t[1] == "~":
                self.take()
                base = involute(base)
            else:
                return base

    def atom(self) -> NCPoly:
        t = self.take()
        if t[0] == "var":
            kind = Kind.SYM if t[1][0] == "y" else Kind.SKEW
            idx = int(t[1][1:])
            if idx < 1:
                raise ParseError("variable indices start at 1", t[2], self.text)
            return NCPoly.letter(Variable(kind, idx))
        if t[1] == "(":
            p = self.poly()
            self.expect(")")
            return p
        if t[1] == "[":
            args = [self.poly()]
            while self.peek()[1] == ",":
                self.take()
                args.append(self.poly())
            end = self.peek()
            if end[1] != "]":
                raise ParseError(f"expected ',' or ']', found {end[1] or 'end of input'!r}", end[2], self.text)
            if len(args) < 2:
                raise ParseError("a commutator needs at least two entries", t[2], self.text)
            self.take()
            return commutator(*args)
        raise ParseError(f"unexpected {t[1] or 'end of input'!r}", t[2], self.text)


def parse_poly(text: str) -> NCPoly:
    p = _Parser(text)
    out = p.poly()
    t = p.peek()
    if t[0] != "end":
        raise ParseError(f"unexpected {t[1]!r}", t[2], text)
    return out


def format_word(w) -> str:
    return " ".join(v.name for v in w)


def _fmt_coeff(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: NCPoly) -> str:
    """Printable form that :func:`parse_poly` reads back exactly."""
    items = p.items()
    if not items:
        return "0"
    parts = []
    for k, (w, c) in enumerate(items):
        neg = c < 0
        a = -c if neg else c
        body = format_word(w)
        if not body:
            body = _fmt_coeff(a)
        elif a != 1:
            body = f"{_fmt_coeff(a)} {body}"
        if k == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"{'-' if neg else '+'} {body}")
    return " ".join(parts)
