"""Text input for exterior-algebra elements, ideals and linear forms.

Grammar (``*`` is the wedge product)::

    element  := ['-'] term (('+' | '-') term)*
    term     := [rational '*'] factor ('*' factor)*  |  rational
    factor   := 'e' digits | '(' element ')'
    rational := integer ['/' positive-integer]

The Unicode minus sign is accepted for ``-``.
"""
from __future__ import annotations

import re
import sys
from fractions import Fraction
from typing import List, Optional, Tuple

from .algebra import ExtElement, LinearForm, UsageError
from .field import QQ, Field
from .groebner import Ideal

_TOKEN = re.compile(r"\s*(?:(e\d+)|(\d+)|([-+*/()]))")


class ParseError(UsageError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text[:pos]}<HERE>{text[pos:]}")
        self.pos = pos


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    text = text.replace("−", "-")
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", text, start)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("var", m.group(1), start))
        elif m.group(2):
            out.append(("int", m.group(2), start))
        else:
            out.append((m.group(3), m.group(3), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, n: int, field: Field):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.n = n
        self.field = field
        self.vanished = False

    def peek(self) -> str:
        return self.toks[self.i][0]

    def take(self, kind: str):
        tok = self.toks[self.i]
        if tok[0] != kind:
            want = {"end": "end of input", "var": "a variable", "int": "an integer"}.get(kind, repr(kind))
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {want}, found {got}", self.text, tok[2])
        self.i += 1
        return tok

    def element(self) -> ExtElement:
        sign = 1
        if self.peek() == "-":
            self.take("-")
            sign = -1
        elif self.peek() == "+":
            self.take("+")
        total = self.term().scale(sign)
        while self.peek() in ("+", "-"):
            op = self.take(self.peek())[0]
            t = self.term()
            total = total + t if op == "+" else total - t
        return total

    def rational(self) -> Fraction:
        num = int(self.take("int")[1])
        if self.peek() == "/":
            self.take("/")
            tok = self.take("int")
            den = int(tok[1])
            if den == 0:
                raise ParseError("zero denominator", self.text, tok[2])
            return Fraction(num, den)
        return Fraction(num)

    def term(self) -> ExtElement:
        coeff = Fraction(1)
        if self.peek() == "int":
            coeff = self.rational()
            if self.peek() != "*":
                return ExtElement.one(self.n, self.field).scale(self.field.coerce(coeff))
            self.take("*")
        prod = self.factor()
        while self.peek() == "*":
            self.take("*")
            f = self.factor()
            nxt = prod * f
            if prod and f and not nxt:
                self.vanished = True
            prod = nxt
        return prod.scale(self.field.coerce(coeff))

    def factor(self) -> ExtElement:
        if self.peek() == "(":
            self.take("(")
            inner = self.element()
            self.take(")")
            return inner
        tok = self.take("var")
        idx = int(tok[1][1:])
        if not 1 <= idx <= self.n:
            raise ParseError(f"variable e{idx} outside e1..e{self.n}", self.text, tok[2])
        return ExtElement.var(idx, self.n, self.field)


def max_variable(text: str) -> int:
    return max((int(m) for m in re.findall(r"e(\d+)", text)), default=0)


def parse_element(text: str, n: Optional[int] = None, field: Field = QQ, warn: bool = True) -> ExtElement:
    """Parse ``text``; ``n`` defaults to the largest variable index present."""
    if n is None:
        n = max(max_variable(text), 1)
    p = _Parser(text, n, field)
    f = p.element()
    p.take("end")
    if p.vanished and warn:
        print(f"warning: a product in {text!r} vanished (repeated variable)", file=sys.stderr)
    return f


def split_top_level(text: str, seps: str = ",;") -> List[str]:
    """Split on separators outside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in seps and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def parse_ideal(text: str, n: Optional[int] = None, field: Field = QQ) -> Ideal:
    """Comma-separated generators, optionally wrapped in parentheses."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")") and len(split_top_level(body)) == 1 and "," in body:
        body = body[1:-1]
    if n is None:
        n = max(max_variable(body), 1)
    return Ideal(n, [parse_element(p, n, field) for p in split_top_level(body)], field)


def parse_linear_form(text: str, n: Optional[int] = None, field: Field = QQ) -> LinearForm:
    f = parse_element(text, n, field)
    try:
        return LinearForm.from_element(f)
    except UsageError:
        raise UsageError(f"{text!r} is not a linear form") from None
