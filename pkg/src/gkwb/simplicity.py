"""Certificates that a nonzero element generates the whole algebra.

:func:`reduce_to_scalar` drives a nonzero ``w`` to a nonzero scalar using only
ideal-preserving operators:

0. (A_n only) strip each auxiliary pair ``(x_i, z_i)``: ``AdX:i`` as many times
   as the ``z_i``-degree, then ``RadZ:i`` as many times as the ``x_i``-degree;
1. iterate ``Ry`` and keep the last nonzero iterate, which is expected to lie
   in ``span{y^i (x+z)^k}``;
2. while the top ``(x+z)``-degree ``K`` is positive, apply ``Lx:K`` one more
   time than the top ``y``-degree of that layer (this empties the layer), and
   finish with ``Lx:0`` until only a scalar is left.

Step 2 runs on ``(i, k)`` coordinates through the closed-form action of
``Lx:j``.  :func:`verify_certificate` replays the recorded steps with plain
normal-form arithmetic, so a mistake in that closed form cannot confirm
itself.  :func:`ideal_membership_oracle` is an unrelated brute-force check.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from gkwb.core import Poly, to_text
from gkwb.errors import BudgetExceeded, TheoryViolation, UsageError
from gkwb.linalg import EchelonBasis
from gkwb.operators import RY, Lx, OperatorTag, apply_op, xz_degree
from gkwb.parser import parse_expr
from gkwb.presentations import NotInSpan, Presentation, to_xz_basis

TRACE_CAP = 200


@dataclass(frozen=True)
class Certificate:
    algebra: str
    input: Poly
    steps: tuple[OperatorTag, ...]
    final_scalar: Fraction

    def to_dict(self) -> dict:
        c = self.final_scalar
        return {
            "algebra": self.algebra,
            "input": to_text(self.input),
            "steps": [t.token for t in self.steps],
            "final_scalar": f"{c.numerator}/{c.denominator}",
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict, pres: Presentation | None = None) -> "Certificate":
        from gkwb.presentations import presentation_from_tag

        try:
            algebra = data["algebra"]
            pres = pres or presentation_from_tag(algebra)
            return cls(
                algebra,
                parse_expr(data["input"], pres.gens),
                tuple(OperatorTag.parse(t) for t in data["steps"]),
                Fraction(data["final_scalar"]),
            )
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"malformed certificate: {exc}") from exc

    @classmethod
    def from_json(cls, text: str, pres: Presentation | None = None) -> "Certificate":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"certificate is not valid JSON: {exc}") from exc
        return cls.from_dict(data, pres)


@dataclass(frozen=True)
class TraceStep:
    tag: OperatorTag
    poly: Poly | None = None        # None when elided or when only coordinates were tracked
    coords: dict | None = None      # {(i, k): c} over y^i (x+z)^k in the kernel phase
    bidegree: tuple | None = None   # (top y-degree of the top layer, top (x+z)-degree)


@dataclass
class ReductionTrace:
    steps: list = field(default_factory=list)
    kernel_element: Poly | None = None

    def __len__(self):
        return len(self.steps)


def _bidegree(coords: dict):
    K = max(k for _, k in coords)
    return max(i for i, k in coords if k == K), K


def lx_on_coords(coords: dict, j: int) -> dict:
    """``Lx:j`` on ``sum c[i,k] y^i (x+z)^k`` via its closed form."""
    out: dict = {}

    def add(key, v):
        s = out.get(key, 0) + v
        if s:
            out[key] = s
        else:
            out.pop(key, None)

    for (i, k), c in coords.items():
        if i:
            add((i - 1, k), i * c)
        if k:
            add((i, k - 1), -k * c)
        if j != k:
            add((i + 1, k), (j - k) * c)
    return out


def _record(trace, tag, w):
    trace.steps.append(TraceStep(tag, w if len(w) <= TRACE_CAP else None))


def reduce_to_scalar(w: Poly, pres: Presentation):
    """Return ``(certificate, trace)`` for a nonzero normal-form ``w``."""
    if w.gens != pres.gens:
        raise UsageError("element and presentation use different generators")
    if not w:
        raise UsageError("the zero element generates the zero ideal")
    w = pres.nf(w)
    start = w
    steps: list[OperatorTag] = []
    trace = ReductionTrace()

    def step(tag, cur):
        nxt = apply_op(tag, cur, pres)
        if not nxt:
            raise TheoryViolation(f"{tag} unexpectedly produced 0", trace)
        steps.append(tag)
        _record(trace, tag, nxt)
        return nxt

    # auxiliary pairs, highest index first
    for i in range(pres.n, 1, -1):
        xi, zi = pres.aux[i - 2]
        for _ in range(max(0, w.degree_in(zi))):
            w = step(OperatorTag("AdX", i), w)
        for _ in range(max(0, w.degree_in(xi))):
            w = step(OperatorTag("RadZ", i), w)

    # Ry down to the last nonzero iterate
    cap = 2 + xz_degree(w, pres)
    for _ in range(cap + 1):
        nxt = apply_op(RY, w, pres)
        if not nxt:
            break
        steps.append(RY)
        _record(trace, RY, nxt)
        w = nxt
    else:
        raise TheoryViolation(f"Ry did not vanish within {cap} steps", w)
    trace.kernel_element = w

    try:
        coords = to_xz_basis(w, pres, a0_only=True).yu_coords()
    except NotInSpan as exc:
        raise TheoryViolation("last nonzero Ry-iterate is outside span{y^i (x+z)^k}",
                              exc.witness) from exc

    def cstep(j, coords):
        coords = lx_on_coords(coords, j)
        if not coords:
            raise TheoryViolation(f"Lx:{j} unexpectedly produced 0", trace)
        steps.append(Lx(j))
        trace.steps.append(TraceStep(Lx(j), coords=coords, bidegree=_bidegree(coords)))
        return coords

    while True:
        top_y, K = _bidegree(coords)
        if K == 0:
            break
        for _ in range(top_y + 1):
            coords = cstep(K, coords)
    M = max(i for i, _ in coords)
    for _ in range(M):
        coords = cstep(0, coords)
    (key, scalar), = coords.items()
    assert key == (0, 0)
    return Certificate(pres.name, start, tuple(steps), Fraction(scalar)), trace


@dataclass(frozen=True)
class Verification:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def verify_certificate(cert: Certificate, pres: Presentation) -> Verification:
    """Replay ``cert.steps`` with normal-form arithmetic and compare the endpoint."""
    if cert.algebra != pres.name:
        return Verification(False, f"certificate is for {cert.algebra}, not {pres.name}")
    if not cert.final_scalar:
        return Verification(False, "final scalar is zero")
    try:
        w = pres.nf(cert.input)
        for tag in cert.steps:
            w = apply_op(tag, w, pres)
    except UsageError as exc:
        return Verification(False, f"replay failed: {exc}")
    expect = pres.gens.one().scale(cert.final_scalar)
    if w != expect:
        return Verification(False, f"replay ends at {to_text(w)}, certificate claims {cert.final_scalar}")
    return Verification(True)


# -- brute-force ideal membership ------------------------------------------


@dataclass(frozen=True)
class OracleResult:
    contains_one: bool
    combination: dict | None   # {(a, b): c} with sum c * nf(a w b) == 1
    products: int

    def to_dict(self, pres: Presentation) -> dict:
        comb = None
        if self.combination is not None:
            fw = pres.gens.format_word
            comb = [{"left": fw(a), "right": fw(b), "coeff": f"{c.numerator}/{c.denominator}"}
                    for (a, b), c in sorted(self.combination.items())]
        return {"contains_one": self.contains_one, "combination": comb, "products": self.products}


def ideal_membership_oracle(w: Poly, pres: Presentation, deg_bound: int,
                            max_products: int = 100_000) -> OracleResult:
    """Is 1 in ``span{nf(a w b)}`` over normal monomials ``a, b`` of degree <= ``deg_bound``?

    Products are added in order of increasing ``deg a + deg b`` and the search
    stops as soon as the span contains a nonzero constant.
    """
    if not w:
        raise UsageError("oracle needs a nonzero element")
    w = pres.nf(w)
    monos = list(pres.monomials(deg_bound))
    total = len(monos) ** 2
    if total > max_products:
        raise BudgetExceeded(f"{total} products exceed the oracle budget of {max_products}")
    pairs = sorted(((a, b) for a in monos for b in monos), key=lambda ab: (len(ab[0]) + len(ab[1]), ab))
    eb = EchelonBasis(key=lambda v: (len(v), v), track=True)
    left_cache: dict = {}
    count = 0
    for a, b in pairs:
        aw = left_cache.get(a)
        if aw is None:
            aw = left_cache[a] = pres.nf_mul(Poly(pres.gens, {a: 1}), w)
        awb = pres.nf_mul(aw, Poly(pres.gens, {b: 1}))
        count += 1
        if eb.insert(awb.terms, tag=(a, b)) and () in eb.rows:
            row = eb.rows[()]
            comb = {t: c / row[()] for t, c in eb.combos[()].items()}
            return OracleResult(True, comb, count)
    return OracleResult(False, None, count)


def combination_value(comb: dict, w: Poly, pres: Presentation) -> Poly:
    """``sum c * nf(a w b)`` for an oracle witness."""
    w = pres.nf(w)
    out = Poly(pres.gens)
    for (a, b), c in comb.items():
        out = out + pres.nf_mul(pres.nf_mul(Poly(pres.gens, {a: 1}), w), Poly(pres.gens, {b: 1})).scale(c)
    return out


# -- random corpora ---------------------------------------------------------


def random_element(pres: Presentation, max_degree: int, rng: random.Random,
                   max_terms: int = 6, coeff_range: int = 3) -> Poly:
    """Random nonzero normal-form element with coefficients in ``[-coeff_range, coeff_range]``."""
    g = len(pres.gens)
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            d = rng.randint(0, max_degree)
            w = tuple(sorted(rng.randrange(g) for _ in range(d)))
            terms[w] = rng.choice([c for c in range(-coeff_range, coeff_range + 1) if c])
        p = Poly(pres.gens, terms)
        if p:
            return p


def random_corpus(pres: Presentation, count: int, max_degree: int, seed: int = 0, **kw) -> list[Poly]:
    rng = random.Random(seed)
    return [random_element(pres, max_degree, rng, **kw) for _ in range(count)]
