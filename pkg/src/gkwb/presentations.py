"""The concrete algebras A and A_n and the ``x^a y^p (x+z)^s`` coordinates.

``A = Q<x, y, z>`` modulo ``[x,y] = [y,z] = 1`` and ``[x,z] = -xy - yz``.
``A_n`` has generators ``x1..xn, y, z1..zn``: the triple ``(x1, y, z1)``
satisfies the relations of A, each pair ``(xi, zi)`` for ``i >= 2`` is a Weyl
pair ``[xi, zi] = 1``, and every other pair of generators commutes.  In both
cases the generators are ordered ``x1 < ... < xn < y < z1 < ... < zn`` and
each rule rewrites a descending pair into sorted order, so the normal words
are exactly the sorted monomials.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from gkwb.core import GeneratorSet, Poly, Word, to_text
from gkwb.errors import TheoryViolation, UsageError
from gkwb.linalg import EchelonBasis
from gkwb.rewrite import (
    RewriteRule,
    RuleSystem,
    confluence_check,
    fast_nf_mul,
    fast_normal_form,
)

CHECK_DEGREE = 3


@dataclass(frozen=True, eq=False)
class Presentation:
    name: str            # "A" or "An:<n>"
    family: str          # "A" or "An"
    n: int
    gens: GeneratorSet
    rules: RuleSystem
    x: int
    y: int
    z: int
    aux: tuple[tuple[int, int], ...]   # (x_i, z_i) for i = 2..n
    _cache: dict = field(default_factory=dict, repr=False)

    # -- arithmetic in normal form --------------------------------------

    def nf(self, p: Poly) -> Poly:
        return fast_normal_form(p, self.rules)

    def nf_mul(self, a: Poly, b: Poly) -> Poly:
        """Normal form of ``a*b``; ``a`` must already be normal."""
        return fast_nf_mul(a, b, self.rules)

    def bracket(self, a: Poly, b: Poly) -> Poly:
        """``[a, b]`` in normal form, for normal ``a`` and ``b``."""
        return self.nf_mul(a, b) - self.nf_mul(b, a)

    def power(self, p: Poly, k: int) -> Poly:
        out = self.gens.one()
        for _ in range(k):
            out = self.nf_mul(out, p)
        return out

    def gen(self, role) -> Poly:
        """A generator by name (``"x2"``) or by role index."""
        if isinstance(role, int):
            return Poly(self.gens, {(role,): 1})
        return self.gens.gen(role)

    @property
    def X(self) -> Poly:
        return self.gen(self.x)

    @property
    def Y(self) -> Poly:
        return self.gen(self.y)

    @property
    def Z(self) -> Poly:
        return self.gen(self.z)

    @property
    def XZ(self) -> Poly:
        """The element ``x + z`` (``x1 + z1`` in A_n)."""
        return self.X + self.Z

    def is_sorted(self, w: Word) -> bool:
        return all(a <= b for a, b in zip(w, w[1:]))

    def monomials(self, max_degree: int, min_degree: int = 0):
        """Normal (sorted) words of the given degree range, as index tuples."""
        g = range(len(self.gens))
        for d in range(min_degree, max_degree + 1):
            yield from itertools.combinations_with_replacement(g, d)

    def __repr__(self):
        return f"Presentation({self.name})"


def _pair_rules(gens: GeneratorSet, corrections: dict) -> RuleSystem:
    """Rules ``b*a -> a*b - [a, b]`` for every pair ``a < b`` of generator indices.

    ``corrections[(a, b)]`` is the commutator ``[a, b]`` in normal form (absent = 0).
    """
    rules = []
    n = len(gens)
    for b in range(n):
        for a in range(b):
            rhs = Poly(gens, {(a, b): 1}) - corrections.get((a, b), Poly(gens))
            rules.append(RewriteRule((b, a), rhs))
    return RuleSystem(gens, tuple(rules))


def _validate(pres: Presentation):
    report = confluence_check(pres.rules)
    if not report.all_reduce_to_zero:
        bad = [to_text(r) for r in report.residuals if r]
        raise TheoryViolation(f"{pres.name}: rule system is not confluent", bad)
    for w in itertools.product(range(len(pres.gens)), repeat=CHECK_DEGREE):
        if pres.rules.is_normal(w) != pres.is_sorted(w):
            raise TheoryViolation(f"{pres.name}: normal words are not the sorted monomials", w)
    return pres


def presentation_A() -> Presentation:
    gens = GeneratorSet(["x", "y", "z"])
    x, y, z = 0, 1, 2
    one = gens.one()
    X, Y, Z = gens.gens()
    rules = RuleSystem(gens, (
        RewriteRule((y, x), X * Y - one),
        RewriteRule((z, y), Y * Z - one),
        RewriteRule((z, x), X * Z + X * Y + Y * Z),
    ))
    return _validate(Presentation("A", "A", 1, gens, rules, x, y, z, ()))


def presentation_An(n: int) -> Presentation:
    """A_n with generators ``x1..xn, y, z1..zn``.

    The printed relation for ``[x1, z1]`` names a generator ``y1`` that does not
    exist; it is taken as ``-x1*y - y*z1`` so that ``n = 1`` reproduces A.
    """
    if not isinstance(n, int) or n < 1:
        raise UsageError("A_n needs a positive integer n")
    names = [f"x{i}" for i in range(1, n + 1)] + ["y"] + [f"z{i}" for i in range(1, n + 1)]
    gens = GeneratorSet(names)
    xs = list(range(n))
    y = n
    zs = list(range(n + 1, 2 * n + 1))
    one = gens.one()
    X1, Y, Z1 = (Poly(gens, {(i,): 1}) for i in (xs[0], y, zs[0]))
    corr = {
        (xs[0], y): one,                      # [x1, y] = 1
        (y, zs[0]): one,                      # [y, z1] = 1
        (xs[0], zs[0]): -(X1 * Y) - Y * Z1,   # [x1, z1] = -x1 y - y z1
    }
    for i in range(1, n):
        corr[(xs[i], zs[i])] = one            # [xi, zi] = 1
    rules = _pair_rules(gens, corr)
    aux = tuple((xs[i], zs[i]) for i in range(1, n))
    return _validate(Presentation(f"An:{n}", "An", n, gens, rules, xs[0], y, zs[0], aux))


def presentation_from_tag(tag: str) -> Presentation:
    """``"A"`` or ``"An:<n>"``."""
    if tag == "A":
        return presentation_A()
    if tag.startswith("An:"):
        try:
            n = int(tag[3:])
        except ValueError:
            raise UsageError(f"bad algebra selector {tag!r}") from None
        return presentation_An(n)
    raise UsageError(f"unknown algebra {tag!r}; use A or An:<n>")


# -- x^a y^p (x+z)^s coordinates -------------------------------------------


@dataclass(frozen=True)
class XZBasisElem:
    """``sum c[a, p, s] * x^a y^p (x+z)^s`` with rational ``c``."""

    coeffs: dict

    def __post_init__(self):
        clean = {tuple(k): Fraction(v) for k, v in self.coeffs.items() if v}
        object.__setattr__(self, "coeffs", clean)

    def __eq__(self, other):
        return isinstance(other, XZBasisElem) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def only_a0(self) -> bool:
        return all(a == 0 for a, _, _ in self.coeffs)

    def yu_coords(self) -> dict:
        """``{(p, s): c}`` for an element with no ``x^a`` prefix."""
        if not self.only_a0():
            raise UsageError("element has x^a components with a > 0")
        return {(p, s): c for (_, p, s), c in self.coeffs.items()}


class NotInSpan(TheoryViolation):
    """``to_xz_basis`` could not express the input; ``witness`` is the residual Poly."""


def xz_monomial(pres: Presentation, a: int, p: int, s: int) -> Poly:
    """Normal form of ``x^a y^p (x+z)^s`` (cached per presentation)."""
    cache = pres._cache.setdefault("xz", {})
    key = (a, p, s)
    hit = cache.get(key)
    if hit is None:
        base = Poly(pres.gens, {(pres.x,) * a + (pres.y,) * p: 1})
        hit = pres.nf_mul(base, pres.power(pres.XZ, s)) if s else base
        cache[key] = hit
    return hit


def _xz_solver(pres: Presentation, d: int, a0_only: bool) -> EchelonBasis:
    cache = pres._cache.setdefault("xz_solver", {})
    key = (d, a0_only)
    eb = cache.get(key)
    if eb is None:
        eb = EchelonBasis(key=lambda w: (len(w), w), track=True)
        for a in range(0, 1 if a0_only else d + 1):
            for p in range(d - a + 1):
                s = d - a - p
                eb.insert(xz_monomial(pres, a, p, s).homogeneous_part(d).terms, tag=(a, p, s))
        cache[key] = eb
    return eb


def _check_core_support(p: Poly, pres: Presentation):
    core = {pres.x, pres.y, pres.z}
    for w in p.terms:
        if any(letter not in core for letter in w):
            raise UsageError("element involves auxiliary generators; strip them first")


def to_xz_basis(p: Poly, pres: Presentation, a0_only: bool = False) -> XZBasisElem:
    """Coordinates of normal-form ``p`` over ``{x^a y^p (x+z)^s}``.

    Works top degree down: the degree-``d`` part of ``p`` is matched against the
    leading parts of the degree-``d`` family members, the corresponding full
    normal forms are subtracted, and the next degree is handled.  With
    ``a0_only`` only the ``y^p (x+z)^s`` members are used; failure raises
    :class:`NotInSpan` carrying the unexpressed remainder.
    """
    _check_core_support(p, pres)
    coeffs: dict = {}
    rest = p
    while rest:
        d = rest.degree
        top = rest.homogeneous_part(d)
        sol = _xz_solver(pres, d, a0_only).solve(top.terms)
        if sol is None:
            raise NotInSpan(f"element is not in the span of the x^a y^p (x+z)^s family"
                            f"{' with a = 0' if a0_only else ''}", rest)
        for key, c in sol.items():
            coeffs[key] = coeffs.get(key, 0) + c
            rest = rest - xz_monomial(pres, *key).scale(c)
    return XZBasisElem(coeffs)


def from_xz_basis(e: XZBasisElem, pres: Presentation) -> Poly:
    out = Poly(pres.gens)
    for key, c in e.coeffs.items():
        out = out + xz_monomial(pres, *key).scale(c)
    return out


def yu_poly(pres: Presentation, coords: dict) -> Poly:
    """Normal form of ``sum c[i, k] * y^i (x+z)^k``."""
    return from_xz_basis(XZBasisElem({(0, i, k): c for (i, k), c in coords.items()}), pres)
