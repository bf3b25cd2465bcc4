"""Incremental exact Gaussian elimination over Q on sparse vectors.

Vectors are dicts ``key -> Fraction``.  Pivots are the largest key under a
caller-supplied sort key (deg-lex for words), so a row only ever contains its
pivot and strictly smaller keys.  Optionally each row carries the linear
combination of inserted vectors it came from, which is how membership
witnesses are extracted.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Callable, Hashable, Mapping


def _axpy(target: dict, scale: Fraction, source: Mapping):
    for k, v in source.items():
        s = target.get(k, 0) - scale * v
        if s:
            target[k] = s
        else:
            target.pop(k, None)


class EchelonBasis:
    """Row-echelon basis of a growing subspace.

    >>> from fractions import Fraction
    >>> eb = EchelonBasis(key=lambda k: k)
    >>> eb.insert({2: Fraction(1), 1: Fraction(1)})
    True
    >>> eb.insert({2: Fraction(2), 1: Fraction(2)})
    False
    >>> eb.rank
    1
    """

    def __init__(self, key: Callable[[Hashable], object], track: bool = False):
        self._key = key
        self.track = track
        self.rows: dict = {}    # pivot -> row vector
        self.combos: dict = {}  # pivot -> combination of tags

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _lead(self, v: Mapping):
        return max(v, key=self._key)

    def reduce(self, v: Mapping, combo: Mapping | None = None):
        """Fully reduce ``v`` against the basis.

        Returns ``(remainder, combo)`` with ``v - sum(combo[t] * inserted[t]) == remainder``
        when tracking (``combo`` then maps tags to coefficients), else ``(remainder, None)``.
        """
        v = {k: Fraction(c) for k, c in v.items() if c}
        combo = dict(combo) if combo is not None else ({} if self.track else None)
        heap = [(_Neg(self._key(k)), k) for k in v]
        heapq.heapify(heap)
        seen = set()
        while heap:
            _, k = heapq.heappop(heap)
            if k in seen or k not in v:
                continue
            seen.add(k)
            row = self.rows.get(k)
            if row is None:
                continue
            f = v[k] / row[k]
            for kk in row:
                if kk not in v and kk not in seen:
                    heapq.heappush(heap, (_Neg(self._key(kk)), kk))
            _axpy(v, f, row)
            if combo is not None:
                # v_new = v - f*row and row = sum(rc[t] * inserted[t])
                for t, rc in self.combos[k].items():
                    s = combo.get(t, 0) + f * rc
                    if s:
                        combo[t] = s
                    else:
                        combo.pop(t, None)
        return v, combo

    def insert(self, v: Mapping, tag: Hashable = None) -> bool:
        """Add ``v`` to the spanning set; returns True when the rank grew."""
        start = None
        if self.track:
            start = {}
        rem, combo = self.reduce(v, start)
        if not rem:
            return False
        pivot = self._lead(rem)
        self.rows[pivot] = rem
        if self.track:
            # rem = v - sum(combo * inserted), so as a combination: tag - combo
            rc = {t: -c for t, c in combo.items()}
            rc[tag] = rc.get(tag, 0) + 1
            self.combos[pivot] = {t: c for t, c in rc.items() if c}
        return True

    def contains(self, v: Mapping) -> bool:
        rem, _ = self.reduce(v)
        return not rem

    def solve(self, v: Mapping):
        """Coefficients ``c`` over inserted tags with ``sum c[t] * inserted[t] == v``, or None."""
        if not self.track:
            raise ValueError("solve() needs a tracking basis")
        rem, combo = self.reduce(v)
        if rem:
            return None
        return combo


class _Neg:
    """Order-reversing wrapper so heapq pops the largest key first."""

    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return other.k < self.k

    def __eq__(self, other):
        return self.k == other.k


def rank(vectors, key: Callable = lambda k: k) -> int:
    eb = EchelonBasis(key)
    for v in vectors:
        eb.insert(v)
    return eb.rank
