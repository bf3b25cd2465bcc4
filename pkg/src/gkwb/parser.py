"""Recursive-descent parser for free-algebra expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := ['-'] factor ('*' factor)*
    factor := base ('^' nat)?
    base   := rational | ident | '(' expr ')' | '[' expr ',' expr ']'

``rational`` is ``int`` or ``int/int``; identifiers are letters followed by
optional digits (``x``, ``z2``).  Multiplication must be written with ``*``.
The result is evaluated in the free algebra and is *not* reduced.  The only
addition to the grammar above is the leading unary minus of a term, which the
canonical printer emits for negative leading coefficients.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from gkwb.core import GeneratorSet, Poly, commutator
from gkwb.errors import UsageError

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z]+\d*)|(?P<op>[-+*^(),\[\]/]))"
)


class ParseError(UsageError):
    """Syntax or name-resolution error; ``offset`` is a byte offset into the input."""

    def __init__(self, message, text="", offset=0):
        self.text = text
        self.offset = len(text[:offset].encode("utf-8"))
        super().__init__(f"{message} at byte {self.offset}")


@dataclass(frozen=True)
class Token:
    kind: str  # 'num', 'ident', 'op', 'end'
    value: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, gens: GeneratorSet):
        self.text = text
        self.gens = gens
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, self.text, tok.pos)

    def accept(self, value) -> bool:
        if self.tok.kind == "op" and self.tok.value == value:
            self.i += 1
            return True
        return False

    def expect(self, value):
        if not self.accept(value):
            got = self.tok.value or "end of input"
            raise self.error(f"expected {value!r}, got {got!r}")

    def parse(self) -> Poly:
        p = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.value!r}")
        return p

    def expr(self) -> Poly:
        p = self.term()
        while True:
            if self.accept("+"):
                p = p + self.term()
            elif self.accept("-"):
                p = p - self.term()
            else:
                return p

    def term(self) -> Poly:
        negate = self.accept("-")
        p = self.factor()
        while self.accept("*"):
            p = p * self.factor()
        return -p if negate else p

    def factor(self) -> Poly:
        p = self.base()
        if self.accept("^"):
            tok = self.tok
            if tok.kind == "op" and tok.value == "-":
                raise self.error("negative exponent")
            if tok.kind != "num":
                raise self.error("exponent must be a nonnegative integer")
            self.i += 1
            p = p ** int(tok.value)
        return p

    def base(self) -> Poly:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            value = Fraction(int(tok.value))
            if self.accept("/"):
                den = self.tok
                if den.kind != "num":
                    raise self.error("denominator must be an integer literal")
                self.i += 1
                if int(den.value) == 0:
                    raise self.error("zero denominator", den)
                value /= int(den.value)
            return Poly(self.gens, {(): value})
        if tok.kind == "ident":
            if tok.value not in self.gens:
                raise self.error(f"unknown generator {tok.value!r}")
            self.i += 1
            return self.gens.gen(tok.value)
        if self.accept("("):
            p = self.expr()
            self.expect(")")
            return p
        if self.accept("["):
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect("]")
            return commutator(a, b)
        raise self.error(f"unexpected {tok.value or 'end of input'!r}")


def parse_expr(text: str, gens: GeneratorSet) -> Poly:
    """Parse ``text`` into an (unreduced) element of the free algebra on ``gens``."""
    return _Parser(text, gens).parse()


def parse_element_file(text: str, gens: GeneratorSet) -> list[Poly]:
    """One expression per line; blank lines and ``#`` comments are skipped."""
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(parse_expr(line, gens))
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
    return out
