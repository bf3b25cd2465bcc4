"""Exact scalars, words, the deg-lex order and sparse free-algebra polynomials.

A word is a tuple of generator indices; the empty tuple is the unit.  A
:class:`Poly` is an immutable map from words to nonzero :class:`~fractions.Fraction`
coefficients whose iteration order is descending deg-lex.  Multiplication here
is plain concatenation; reduction modulo relations lives in :mod:`gkwb.rewrite`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping

from gkwb.errors import UsageError

Word = tuple  # tuple[int, ...]

#: degree reported for the zero polynomial
NEG_INF = -math.inf

LESS, EQUAL, GREATER = -1, 0, 1


class GeneratorSet:
    """An ordered list of distinct generator names.

    The order fixes the lex part of deg-lex: ``names[0]`` is the smallest letter.
    """

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if not names:
            raise UsageError("a generator set must be nonempty")
        if len(set(names)) != len(names):
            raise UsageError(f"duplicate generator names in {names!r}")
        for name in names:
            if not (isinstance(name, str) and name[:1].isalpha()):
                raise UsageError(f"bad generator name {name!r}")
        self.names = names
        self._index = {name: i for i, name in enumerate(names)}

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __eq__(self, other):
        return isinstance(other, GeneratorSet) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"GeneratorSet({list(self.names)!r})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UsageError(f"unknown generator {name!r}; known: {', '.join(self.names)}") from None

    def __contains__(self, name):
        return name in self._index

    def gen(self, name: str) -> "Poly":
        return Poly(self, {(self.index(name),): 1})

    def gens(self) -> list["Poly"]:
        return [Poly(self, {(i,): 1}) for i in range(len(self))]

    def one(self) -> "Poly":
        return Poly(self, {(): 1})

    def zero(self) -> "Poly":
        return Poly(self)

    def word(self, *names: str) -> Word:
        return tuple(self.index(n) for n in names)

    def format_word(self, w: Word) -> str:
        """Render a word with runs collapsed into powers, e.g. ``x^2*y*z^3``."""
        if not w:
            return "1"
        parts = []
        i = 0
        while i < len(w):
            j = i
            while j < len(w) and w[j] == w[i]:
                j += 1
            name = self.names[w[i]]
            parts.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return "*".join(parts)


def deglex_key(w: Word):
    """Sort key realising deg-lex: ``deglex_key(a) < deglex_key(b)`` iff ``a < b``."""
    return (len(w), w)


def word_cmp(a: Word, b: Word, gens: GeneratorSet | None = None) -> int:
    """Compare two words in deg-lex order; returns LESS, EQUAL or GREATER.

    With ``gens`` given, letters outside the generator set raise UsageError.
    """
    if gens is not None:
        n = len(gens)
        for letter in a + b:
            if not 0 <= letter < n:
                raise UsageError(f"letter {letter} is not a generator index of {gens!r}")
    ka, kb = deglex_key(a), deglex_key(b)
    if ka < kb:
        return LESS
    if ka > kb:
        return GREATER
    return EQUAL


def _coerce(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise UsageError(f"coefficients must be exact rationals, got {type(c).__name__}")


class Poly:
    """Element of the free algebra over Q with a fixed generator set.

    Instances are immutable and hashable.  ``terms`` iterates in descending
    deg-lex order, so the first item is the leading term.
    """

    __slots__ = ("gens", "_terms", "_hash")

    def __init__(self, gens: GeneratorSet, terms: Mapping[Word, object] | None = None):
        self.gens = gens
        cleaned = {}
        if terms:
            for w, c in terms.items():
                c = _coerce(c)
                if c:
                    cleaned[tuple(w)] = c
        self._terms = dict(sorted(cleaned.items(), key=lambda t: deglex_key(t[0]), reverse=True))
        self._hash = None

    @classmethod
    def _raw(cls, gens, terms):
        """Build from an already-cleaned dict of Fraction coefficients (no zeros)."""
        p = cls.__new__(cls)
        p.gens = gens
        p._terms = dict(sorted(terms.items(), key=lambda t: deglex_key(t[0]), reverse=True))
        p._hash = None
        return p

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Mapping[Word, Fraction]:
        return self._terms

    def items(self):
        return self._terms.items()

    def __iter__(self) -> Iterator[tuple[Word, Fraction]]:
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def coeff(self, w: Word) -> Fraction:
        return self._terms.get(tuple(w), Fraction(0))

    @property
    def degree(self):
        """Total degree; ``NEG_INF`` for the zero polynomial."""
        if not self._terms:
            return NEG_INF
        return max(len(w) for w in self._terms)

    def degree_in(self, letters) -> int | float:
        """Largest number of occurrences of the given letter indices in any word."""
        if isinstance(letters, int):
            letters = (letters,)
        letters = set(letters)
        if not self._terms:
            return NEG_INF
        return max(sum(1 for a in w if a in letters) for w in self._terms)

    @property
    def leading_word(self) -> Word:
        if not self._terms:
            raise UsageError("the zero polynomial has no leading word")
        return next(iter(self._terms))

    @property
    def leading_coeff(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        return next(iter(self._terms.values()))

    def is_scalar(self) -> bool:
        return all(not w for w in self._terms)

    def scalar(self) -> Fraction:
        if not self.is_scalar():
            raise UsageError(f"{self} is not a scalar")
        return self._terms.get((), Fraction(0))

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly._raw(self.gens, {w: c for w, c in self._terms.items() if len(w) == d})

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "Poly"):
        if other.gens is not self.gens and other.gens != self.gens:
            raise UsageError(f"generator sets differ: {self.gens!r} vs {other.gens!r}")

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly(self.gens, {(): _coerce(other)})

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            s = out.get(w, 0) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return Poly._raw(self.gens, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.gens, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "Poly":
        c = _coerce(c)
        if not c:
            return Poly(self.gens)
        return Poly._raw(self.gens, {w: c * v for w, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for wa, ca in self._terms.items():
            for wb, cb in other._terms.items():
                w = wa + wb
                out[w] = out.get(w, 0) + ca * cb
        return Poly._raw(self.gens, {w: c for w, c in out.items() if c})

    def __rmul__(self, other):
        # scalars commute with everything
        return self.scale(other)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise UsageError("only nonnegative integer powers are defined")
        out = self.gens.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.gens == other.gens and self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self._terms == ({(): Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.gens, tuple(self._terms.items())))
        return self._hash

    # -- text -------------------------------------------------------------

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"Poly({to_text(self)!r})"


def poly_add(a: Poly, b: Poly) -> Poly:
    return a + b


def poly_mul(a: Poly, b: Poly) -> Poly:
    """Free (concatenation) product; no rewriting."""
    return a * b


def commutator(a: Poly, b: Poly) -> Poly:
    """``[a, b] = ab - ba`` in the free algebra."""
    return a * b - b * a


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def to_text(p: Poly) -> str:
    """Canonical text: descending deg-lex terms written ``c*w``; ``0`` for zero."""
    if not p:
        return "0"
    out = []
    for i, (w, c) in enumerate(p.items()):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not w:
            body = _format_coeff(a)
        elif a == 1:
            body = p.gens.format_word(w)
        else:
            body = f"{_format_coeff(a)}*{p.gens.format_word(w)}"
        if i == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)
