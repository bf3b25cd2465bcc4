"""Ideal-preserving operators and bounded checks of the algebra identities.

Operators (all map a two-sided ideal into itself):

* ``Ry``:      ``w -> [w, y]``
* ``Lx:j``:    ``w -> [x, w] + j*y*w``
* ``AdX:i``:   ``w -> [x_i, w]``  (A_n, ``i >= 2``)
* ``RadZ:i``:  ``w -> [w, z_i]``  (A_n, ``i >= 2``)

The ``lemma*`` functions verify identities of A by normal-form equality over
finite parameter ranges and return a :class:`LemmaReport`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from gkwb.core import Poly, to_text
from gkwb.errors import TheoryViolation, UsageError
from gkwb.presentations import Presentation


@dataclass(frozen=True)
class OperatorTag:
    kind: str      # 'Ry', 'Lx', 'AdX', 'RadZ'
    arg: int = 0

    def __post_init__(self):
        if self.kind not in ("Ry", "Lx", "AdX", "RadZ"):
            raise UsageError(f"unknown operator {self.kind!r}")
        if self.kind == "Lx" and self.arg < 0:
            raise UsageError("Lx needs j >= 0")
        if self.kind in ("AdX", "RadZ") and self.arg < 2:
            raise UsageError(f"{self.kind} acts on an auxiliary pair, index >= 2")

    @property
    def token(self) -> str:
        return "Ry" if self.kind == "Ry" else f"{self.kind}:{self.arg}"

    @classmethod
    def parse(cls, token: str) -> "OperatorTag":
        if token == "Ry":
            return cls("Ry")
        kind, sep, arg = token.partition(":")
        if not sep or kind == "Ry":
            raise UsageError(f"bad operator token {token!r}")
        try:
            return cls(kind, int(arg))
        except ValueError:
            raise UsageError(f"bad operator token {token!r}") from None

    def __str__(self):
        return self.token


RY = OperatorTag("Ry")


def Lx(j: int) -> OperatorTag:
    return OperatorTag("Lx", j)


def _aux_pair(pres: Presentation, i: int):
    if pres.family != "An" or not 2 <= i <= pres.n:
        raise UsageError(f"no auxiliary pair x{i}, z{i} in {pres.name}")
    return pres.aux[i - 2]


def apply_op(tag: OperatorTag, w: Poly, pres: Presentation) -> Poly:
    """Normal form of the operator applied to normal-form ``w``."""
    if tag.kind == "Ry":
        return pres.bracket(w, pres.Y)
    if tag.kind == "Lx":
        out = pres.bracket(pres.X, w)
        if tag.arg:
            out = out + pres.nf_mul(pres.Y, w).scale(tag.arg)
        return out
    xi, zi = _aux_pair(pres, tag.arg)
    if tag.kind == "AdX":
        return pres.bracket(pres.gen(xi), w)
    return pres.bracket(w, pres.gen(zi))


def apply_ops(tags, w: Poly, pres: Presentation) -> Poly:
    for t in tags:
        w = apply_op(t, w, pres)
    return w


# -- reports ----------------------------------------------------------------


@dataclass
class LemmaReport:
    lemma: str
    cases: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, ok: bool, **case):
        self.cases += 1
        if not ok:
            self.failures.append({k: (to_text(v) if isinstance(v, Poly) else v) for k, v in case.items()})

    def merge(self, other: "LemmaReport"):
        self.cases += other.cases
        self.failures.extend(other.failures)

    def to_dict(self) -> dict:
        return {"lemma": self.lemma, "cases": self.cases, "failures": self.failures}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _kpow(pres, k, base, e):
    """``k * base^e`` with the convention that it vanishes when ``k == 0``."""
    if k == 0:
        return Poly(pres.gens)
    return pres.power(base, e).scale(k)


def lemma2_check(pres: Presentation, kmax: int) -> LemmaReport:
    """Commutator identities for powers of ``x``, ``y``, ``y+z`` and ``x+z``, ``k = 0..kmax``."""
    rep = LemmaReport("2")
    X, Y, Z, U = pres.X, pres.Y, pres.Z, pres.XZ
    YZ = Y + Z
    br, pw = pres.bracket, pres.power
    for k in range(kmax + 1):
        Uk = pw(U, k)
        u_rhs = -(pres.nf_mul(Y, Uk).scale(k) + _kpow(pres, k, U, k - 1))
        checks = [
            ("[x^k, y] = k x^(k-1)", br(pw(X, k), Y), _kpow(pres, k, X, k - 1)),
            ("[x, y^k] = k y^(k-1)", br(X, pw(Y, k)), _kpow(pres, k, Y, k - 1)),
            ("[y, z^k] = k z^(k-1)", br(Y, pw(Z, k)), _kpow(pres, k, Z, k - 1)),
            ("[y^k, z] = k y^(k-1)", br(pw(Y, k), Z), _kpow(pres, k, Y, k - 1)),
            ("[x, (x+z)^k] = -k(y(x+z)^k + (x+z)^(k-1)) = [(x+z)^k, z]", br(X, Uk), u_rhs),
            ("[(y+z)^k, z] = k (y+z)^(k-1)", br(pw(YZ, k), Z), _kpow(pres, k, YZ, k - 1)),
            ("[y, (x+z)^k] = 0", br(Y, Uk), Poly(pres.gens)),
        ]
        for name, lhs, rhs in checks:
            ok = lhs == rhs
            if name.startswith("[x, (x+z)^k]"):
                ok = ok and br(Uk, Z) == rhs
            rep.record(ok, identity=name, k=k, lhs=lhs, rhs=rhs)
    return rep


class NilpotencyError(TheoryViolation):
    """``Ry`` did not reach zero within the iteration cap."""


def xz_degree(w: Poly, pres: Presentation) -> int:
    if not w:
        return 0
    return w.degree_in((pres.x, pres.z))


def lemma4_iterate(w0: Poly, pres: Presentation, cap: int | None = None) -> list[Poly]:
    """``[w0, Ry(w0), Ry^2(w0), ..., 0]``.

    The default cap is ``2 + deg_(x,z)(w0)``; ``Ry`` lowers that degree by one.
    """
    if cap is None:
        cap = 2 + xz_degree(w0, pres)
    seq = [w0]
    while seq[-1]:
        if len(seq) > cap:
            raise NilpotencyError(f"Ry did not vanish within {cap} steps", seq[-1])
        seq.append(apply_op(RY, seq[-1], pres))
    return seq


def _xyz(pres, a, p, k) -> Poly:
    return Poly(pres.gens, {(pres.x,) * a + (pres.y,) * p + (pres.z,) * k: 1})


def lemma4_sweep(pres: Presentation, nmax: int, pmax: int) -> LemmaReport:
    """``Ry^N(x^(N-k) y^p z^k) = N! (-1)^k y^p`` and ``Ry^(N+1)`` of it is 0."""
    rep = LemmaReport("4")
    for N in range(nmax + 1):
        for k in range(N + 1):
            for p in range(pmax + 1):
                seq = lemma4_iterate(_xyz(pres, N - k, p, k), pres)
                expect = _xyz(pres, 0, p, 0).scale(math.factorial(N) * (-1) ** k)
                got = seq[N] if len(seq) > N else Poly(pres.gens)
                ok = got == expect and len(seq) == N + 2
                rep.record(ok, N=N, k=k, p=p, w_N=got, expected=expect)
    return rep


def lemma4_corollary_check(alphas: Mapping, N: int, M: int, pres: Presentation,
                           lower: Poly | None = None) -> bool:
    """Top-layer formula for ``Ry^N``.

    ``alphas[(p, k)]`` is the coefficient of ``x^(N-k) y^p z^k`` (``p <= M``,
    ``k <= N``).  ``lower`` may add terms of smaller (x,z)-degree, which must be
    killed by ``N`` applications.
    """
    w = Poly(pres.gens)
    for (p, k), c in alphas.items():
        if not (0 <= p <= M and 0 <= k <= N):
            raise UsageError(f"coefficient index {(p, k)} out of range")
        w = w + _xyz(pres, N - k, p, k).scale(c)
    if lower is not None:
        if lower and xz_degree(lower, pres) >= N:
            raise UsageError("lower terms must have (x,z)-degree below N")
        w = w + pres.nf(lower)
    for _ in range(N):
        w = apply_op(RY, w, pres)
    expect = Poly(pres.gens)
    for p in range(M + 1):
        alt = sum((Fraction(alphas.get((p, k), 0)) * (-1) ** k for k in range(N + 1)), Fraction(0))
        expect = expect + _xyz(pres, 0, p, 0).scale(math.factorial(N) * alt)
    return w == expect


@dataclass(frozen=True)
class Lemma5Split:
    head: Poly   # normal form of x (y+z)^k
    tail: Poly   # z^k x - head, free of x


def lemma5_decompose(k: int, pres: Presentation) -> Lemma5Split:
    if k < 1:
        raise UsageError("k must be positive")
    head = pres.nf_mul(pres.X, pres.power(pres.Y + pres.Z, k))
    tail = pres.nf_mul(pres.power(pres.Z, k), pres.X) - head
    if tail and tail.degree_in(pres.x) > 0:
        raise TheoryViolation(f"z^{k} x - x (y+z)^{k} still involves x", tail)
    return Lemma5Split(head, tail)


def lemma5_check(pres: Presentation, kmax: int) -> LemmaReport:
    """x-free tail of ``z^k x - x(y+z)^k``; positive top coefficients of ``(y+z)^k``."""
    rep = LemmaReport("5")
    for k in range(1, kmax + 1):
        try:
            split = lemma5_decompose(k, pres)
            rep.record(True, claim="tail is x-free", k=k)
        except TheoryViolation as exc:
            rep.record(False, claim="tail is x-free", k=k, tail=exc.witness)
            split = None
        yz = pres.power(pres.Y + pres.Z, k)
        top = [yz.coeff((pres.y,) * i + (pres.z,) * (k - i)) for i in range(k + 1)]
        rep.record(all(c > 0 for c in top), claim="(y+z)^k top coefficients > 0", k=k,
                   coefficients=[str(c) for c in top])
        if split is not None:
            # the leading x-part of z^k x is exactly x times the (y+z)^k expansion
            zkx = split.head + split.tail
            rep.record(zkx == pres.nf_mul(pres.power(pres.Z, k), pres.X),
                       claim="head + tail = z^k x", k=k)
    return rep


def _word(pres, a, p, s, k):
    """Normal form of ``x^a y^p (x+z)^s z^k``, zero if an exponent is negative."""
    if min(a, p, s, k) < 0:
        return Poly(pres.gens)
    left = Poly(pres.gens, {(pres.x,) * a + (pres.y,) * p: 1})
    out = pres.nf_mul(left, pres.power(pres.XZ, s))
    return pres.nf_mul(out, pres.power(pres.Z, k))


def lemma6_step(N: int, s: int, k: int, p: int, pres: Presentation):
    """Both sides of the one-step rewrite of ``x^(N-s-k) y^p (x+z)^s z^k``."""
    if not (0 <= s <= N - 1 and 0 <= k <= N - s - 1 and p >= 0):
        raise UsageError(f"need 0 <= s <= N-1 and 0 <= k <= N-s-1 (got N={N}, s={s}, k={k})")
    a = N - (s + 1) - k
    lhs = _word(pres, N - s - k, p, s, k)
    rhs = (_word(pres, a, p, s + 1, k)
           - _word(pres, a, p, s, k + 1)
           + _word(pres, a, p - 1, s, k).scale(p)
           - _word(pres, a, p + 1, s, k).scale(s)
           - _word(pres, a, p, s - 1, k).scale(s))
    return lhs, rhs


def lemma6_step_check(N: int, s: int, k: int, p: int, pres: Presentation) -> bool:
    lhs, rhs = lemma6_step(N, s, k, p, pres)
    return lhs == rhs


def lemma6_sweep(pres: Presentation, nmax: int, pmax: int) -> LemmaReport:
    rep = LemmaReport("6")
    for N in range(1, nmax + 1):
        for s in range(N):
            for k in range(N - s):
                for p in range(pmax + 1):
                    lhs, rhs = lemma6_step(N, s, k, p, pres)
                    rep.record(lhs == rhs, N=N, s=s, k=k, p=p, lhs=lhs, rhs=rhs)
    return rep


def yu(pres: Presentation, i: int, k: int) -> Poly:
    """Normal form of ``y^i (x+z)^k``; zero for negative exponents."""
    if i < 0 or k < 0:
        return Poly(pres.gens)
    return _word(pres, 0, i, k, 0)


def lemma7_rhs(i: int, k: int, j: int, pres: Presentation) -> Poly:
    return yu(pres, i - 1, k).scale(i) - yu(pres, i, k - 1).scale(k) + yu(pres, i + 1, k).scale(j - k)


def lemma7_check(i: int, k: int, j: int, pres: Presentation) -> bool:
    """``Lx(j)(y^i (x+z)^k) = i y^(i-1)(x+z)^k - k y^i (x+z)^(k-1) + (j-k) y^(i+1)(x+z)^k``."""
    return apply_op(Lx(j), yu(pres, i, k), pres) == lemma7_rhs(i, k, j, pres)


def lemma7_sweep(pres: Presentation, imax: int, kmax: int, jmax: int) -> LemmaReport:
    rep = LemmaReport("7")
    for i in range(imax + 1):
        for k in range(kmax + 1):
            for j in range(jmax + 1):
                lhs = apply_op(Lx(j), yu(pres, i, k), pres)
                rhs = lemma7_rhs(i, k, j, pres)
                rep.record(lhs == rhs, i=i, k=k, j=j, lhs=lhs, rhs=rhs)
    return rep


def lemma_check(lemma: str, pres: Presentation, nmax: int) -> LemmaReport:
    """Dispatch used by the ``lemma-check`` command; ``nmax`` bounds every parameter."""
    lemma = str(lemma)
    if lemma == "2":
        return lemma2_check(pres, nmax)
    if lemma == "4":
        return lemma4_sweep(pres, nmax, min(nmax, 2))
    if lemma == "5":
        return lemma5_check(pres, nmax)
    if lemma == "6":
        return lemma6_sweep(pres, nmax, min(nmax, 2))
    if lemma == "7":
        return lemma7_sweep(pres, nmax, nmax, nmax)
    raise UsageError(f"no check for lemma {lemma!r}; choose 2, 4, 5, 6 or 7")
