"""Oriented rewriting modulo a two-sided ideal.

A :class:`RuleSystem` is a list of rules ``lhs -> rhs`` with every word of
``rhs`` deg-lex smaller than ``lhs``.  This module reduces to normal form,
enumerates critical pairs (overlaps and inclusions of left-hand sides), builds
their S-polynomials and checks that all of them reduce to zero.  It verifies
confluence; it never adds rules.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction

from gkwb.core import GeneratorSet, Poly, Word, deglex_key, to_text
from gkwb.errors import BudgetExceeded, UsageError
from gkwb.parser import ParseError, parse_expr

DEFAULT_STEP_BUDGET = 10**7


@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: Poly

    def __post_init__(self):
        if not self.lhs:
            raise UsageError("rule left-hand side must be a nonempty word")
        key = deglex_key(self.lhs)
        for w in self.rhs.terms:
            if not deglex_key(w) < key:
                raise UsageError(
                    f"rule {self.format()} does not decrease: "
                    f"{self.rhs.gens.format_word(w)} is not below the left-hand side"
                )

    @property
    def poly(self) -> Poly:
        """The defining relation ``lhs - rhs``."""
        return Poly(self.rhs.gens, {self.lhs: 1}) - self.rhs

    def format(self) -> str:
        return f"{self.rhs.gens.format_word(self.lhs)} -> {to_text(self.rhs)}"


@dataclass(frozen=True, eq=False)
class RuleSystem:
    gens: GeneratorSet
    rules: tuple[RewriteRule, ...]
    _memo: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        seen = set()
        for r in self.rules:
            if r.rhs.gens != self.gens:
                raise UsageError("rule over a different generator set")
            if r.lhs in seen:
                raise UsageError(f"duplicate left-hand side {self.gens.format_word(r.lhs)}")
            seen.add(r.lhs)
        by_first, by_last = {}, {}
        for idx, r in enumerate(self.rules):
            by_first.setdefault(r.lhs[0], []).append(idx)
            by_last.setdefault(r.lhs[-1], []).append(idx)
        object.__setattr__(self, "_by_letter", by_first)
        object.__setattr__(self, "_by_last", by_last)

    @classmethod
    def from_pairs(cls, gens: GeneratorSet, pairs) -> "RuleSystem":
        return cls(gens, tuple(RewriteRule(tuple(l), r) for l, r in pairs))

    def __len__(self):
        return len(self.rules)

    def match_at(self, w: Word, pos: int):
        """Index of the first rule (in rule order) whose lhs occurs in ``w`` at ``pos``."""
        for idx in self._by_letter.get(w[pos], ()):
            lhs = self.rules[idx].lhs
            if w[pos:pos + len(lhs)] == lhs:
                return idx
        return None

    def find_redex(self, w: Word, strategy: str = "leftmost"):
        """``(pos, rule index)`` of the selected redex in ``w``, or None if ``w`` is normal."""
        if strategy == "leftmost":
            positions = range(len(w))
        elif strategy == "rightmost":
            positions = range(len(w) - 1, -1, -1)
        else:
            raise UsageError(f"unknown redex strategy {strategy!r}")
        for pos in positions:
            idx = self.match_at(w, pos)
            if idx is not None:
                return pos, idx
        return None

    def is_normal(self, w: Word) -> bool:
        return self.find_redex(w) is None

    def to_text(self) -> str:
        lines = ["gens: " + " ".join(self.gens.names)]
        lines += [r.format() for r in self.rules]
        return "\n".join(lines) + "\n"

    # -- memoised right multiplication (confluent systems only) ----------

    def _times_gen(self, m: Word, g: int) -> dict:
        key = (m, g)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        w = m + (g,)
        # m is normal, so any redex must end at the last letter
        best = None
        for idx in self._by_last.get(g, ()):
            lhs = self.rules[idx].lhs
            if len(lhs) <= len(w) and w[len(w) - len(lhs):] == lhs:
                if best is None or len(lhs) > len(self.rules[best].lhs):
                    best = idx
        if best is None:
            out = {w: Fraction(1)}
        else:
            rule = self.rules[best]
            u = w[:len(w) - len(rule.lhs)]
            out = {}
            for t, c in rule.rhs.items():
                for ww, cc in self._times_word({u: Fraction(1)}, t).items():
                    s = out.get(ww, 0) + c * cc
                    if s:
                        out[ww] = s
                    else:
                        out.pop(ww)
        self._memo[key] = out
        return out

    def _times_word(self, acc: dict, word: Word) -> dict:
        for g in word:
            nxt: dict = {}
            for m, c in acc.items():
                for ww, cc in self._times_gen(m, g).items():
                    s = nxt.get(ww, 0) + c * cc
                    if s:
                        nxt[ww] = s
                    else:
                        nxt.pop(ww)
            acc = nxt
        return acc


@dataclass(frozen=True)
class CriticalPair:
    """An ambiguity of the rule system.

    ``overlap_word = left_context + lhs_b + (...)``: ``lhs_a`` is a prefix of the
    overlap word and ``lhs_b`` starts right after ``left_context``.  For a proper
    overlap ``overlap_word = lhs_a + right_context``; for an inclusion
    ``overlap_word = lhs_a = left_context + lhs_b + right_context``.
    """

    rule_a: int
    rule_b: int
    overlap_word: Word
    left_context: Word
    right_context: Word
    kind: str  # 'overlap' or 'inclusion'


def _one_step(rs: RuleSystem, w: Word, pos: int, idx: int) -> Poly:
    r = rs.rules[idx]
    u, v = w[:pos], w[pos + len(r.lhs):]
    return Poly._raw(rs.gens, {u + t + v: c for t, c in r.rhs.items()})


def reduce_once(p: Poly, rs: RuleSystem, strategy: str = "leftmost"):
    """Rewrite one redex of ``p``.

    The redex sits in the deg-lex-greatest reducible word, at its leftmost
    (or rightmost) occurrence, using the first matching rule in rule order.
    Returns ``(poly, changed)``.
    """
    for w, c in p.items():
        hit = rs.find_redex(w, strategy)
        if hit is not None:
            pos, idx = hit
            return p - Poly._raw(p.gens, {w: c}) + _one_step(rs, w, pos, idx).scale(c), True
    return p, False


def normal_form(p: Poly, rs: RuleSystem, max_steps: int = DEFAULT_STEP_BUDGET,
                strategy: str = "leftmost") -> Poly:
    """Fixpoint of :func:`reduce_once` with the same redex selection.

    Words are processed greatest-first from a heap; a word that survives
    unreduced can never receive further contributions, because rewriting only
    produces smaller words.
    """
    if p.gens != rs.gens:
        raise UsageError("polynomial and rule system use different generator sets")
    todo = dict(p.terms)
    heap = [(_neg_key(w), w) for w in todo]
    heapq.heapify(heap)
    done = {}
    steps = 0
    while heap:
        _, w = heapq.heappop(heap)
        c = todo.pop(w, None)
        if c is None:
            continue
        hit = rs.find_redex(w, strategy)
        if hit is None:
            done[w] = c
            continue
        steps += 1
        if steps > max_steps:
            raise BudgetExceeded(f"normal form exceeded {max_steps} reduction steps")
        pos, idx = hit
        r = rs.rules[idx]
        u, v = w[:pos], w[pos + len(r.lhs):]
        for t, ct in r.rhs.items():
            nw = u + t + v
            assert deglex_key(nw) < deglex_key(w), "rewrite step did not decrease"
            s = todo.get(nw, 0) + c * ct
            if nw not in todo:
                heapq.heappush(heap, (_neg_key(nw), nw))
            if s:
                todo[nw] = s
            else:
                todo.pop(nw, None)
    return Poly._raw(p.gens, done)


def fast_normal_form(p: Poly, rs: RuleSystem) -> Poly:
    """Normal form via memoised right multiplication by generators.

    Agrees with :func:`normal_form` only when ``rs`` is confluent.
    """
    out: dict = {}
    one = {(): Fraction(1)}
    for w, c in p.items():
        for ww, cc in rs._times_word(one, w).items():
            s = out.get(ww, 0) + c * cc
            if s:
                out[ww] = s
            else:
                out.pop(ww)
    return Poly._raw(p.gens, out)


def fast_nf_mul(a: Poly, b: Poly, rs: RuleSystem) -> Poly:
    """Normal form of ``a*b`` for ``a`` already in normal form (confluent ``rs``)."""
    out: dict = {}
    acc = dict(a.terms)
    for w, c in b.items():
        for ww, cc in rs._times_word(acc, w).items():
            s = out.get(ww, 0) + c * cc
            if s:
                out[ww] = s
            else:
                out.pop(ww)
    return Poly._raw(a.gens, out)


def _neg_key(w: Word):
    return (-len(w), tuple(-a for a in w))


def critical_pairs(rs: RuleSystem) -> list[CriticalPair]:
    """All proper overlaps and inclusions among left-hand sides, in a fixed order."""
    pairs = []
    for ia, ra in enumerate(rs.rules):
        a = ra.lhs
        for ib, rb in enumerate(rs.rules):
            b = rb.lhs
            # suffix of a equals prefix of b, both strictly shorter than the words
            for k in range(1, min(len(a), len(b))):
                if a[len(a) - k:] == b[:k]:
                    pairs.append(CriticalPair(ia, ib, a + b[k:], a[:len(a) - k], b[k:], "overlap"))
            if ia != ib and len(b) <= len(a):
                for pos in range(len(a) - len(b) + 1):
                    if a[pos:pos + len(b)] == b:
                        pairs.append(CriticalPair(ia, ib, a, a[:pos], a[pos + len(b):], "inclusion"))
    return pairs


def s_polynomial(pair: CriticalPair, rs: RuleSystem) -> Poly:
    """Rewrite of the overlap word at ``lhs_a`` minus its rewrite at ``lhs_b``."""
    w = pair.overlap_word
    return _one_step(rs, w, 0, pair.rule_a) - _one_step(rs, w, len(pair.left_context), pair.rule_b)


@dataclass(frozen=True)
class ConfluenceReport:
    pairs: tuple[CriticalPair, ...]
    s_polys: tuple[Poly, ...]
    residuals: tuple[Poly, ...]

    @property
    def all_reduce_to_zero(self) -> bool:
        return all(not r for r in self.residuals)

    def describe(self, rs: RuleSystem) -> list[dict]:
        out = []
        for pair, s, r in zip(self.pairs, self.s_polys, self.residuals):
            out.append({
                "rules": [rs.rules[pair.rule_a].format(), rs.rules[pair.rule_b].format()],
                "kind": pair.kind,
                "overlap": rs.gens.format_word(pair.overlap_word),
                "s_polynomial": to_text(s),
                "residual": to_text(r),
            })
        return out


def confluence_check(rs: RuleSystem, max_steps: int = DEFAULT_STEP_BUDGET) -> ConfluenceReport:
    pairs = critical_pairs(rs)
    spolys = [s_polynomial(p, rs) for p in pairs]
    residuals = [normal_form(s, rs, max_steps) for s in spolys]
    return ConfluenceReport(tuple(pairs), tuple(spolys), tuple(residuals))


def parse_rules(text: str, gens: GeneratorSet | None = None) -> RuleSystem:
    """Read the ``word -> poly`` rule format.

    The generator order is taken from a ``gens: x y z`` line unless ``gens`` is
    supplied.  ``#`` starts a comment.
    """
    rules = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("gens:"):
            names = line[len("gens:"):].replace(",", " ").split()
            declared = GeneratorSet(names)
            if gens is not None and declared != gens:
                raise UsageError(f"line {lineno}: file declares {declared!r}, expected {gens!r}")
            gens = declared
            continue
        if gens is None:
            raise UsageError(f"line {lineno}: rule before any 'gens:' declaration")
        if "->" not in line:
            raise ParseError(f"line {lineno}: expected 'word -> poly'")
        lhs_text, rhs_text = line.split("->", 1)
        lhs = parse_expr(lhs_text, gens)
        if len(lhs) != 1 or lhs.leading_coeff != 1 or not lhs.leading_word:
            raise UsageError(f"line {lineno}: left-hand side must be a single monic word")
        rules.append(RewriteRule(lhs.leading_word, parse_expr(rhs_text, gens)))
    if gens is None:
        raise UsageError("no 'gens:' declaration found")
    return RuleSystem(gens, tuple(rules))
