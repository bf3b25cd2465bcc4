"""Dimensions of the filtration V_n and Gel'fand-Kirillov dimension estimates.

``V_n`` is the span of all products of at most ``n`` generators.  For the A
family the sorted monomials form a basis, so ``dim V_n = C(n + g, g)`` with
``g`` generators; :func:`filtration_dim_bruteforce` checks that count by exact
rank computations that never assume the basis.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction

from gkwb.core import Poly
from gkwb.errors import BudgetExceeded, UsageError
from gkwb.linalg import EchelonBasis
from gkwb.presentations import Presentation

DEFAULT_MAX_DIM = 128   # allows n <= 7 for A and n <= 4 for A_2

CSV_COLUMNS = ("n", "dim_counted", "dim_bruteforce", "paper_formula", "method")


def count_normal_monomials(pres: Presentation | int, n: int) -> int:
    """Sorted monomials of degree <= n in ``g`` letters: ``C(n + g, g)``."""
    g = pres if isinstance(pres, int) else len(pres.gens)
    if n < 0:
        raise UsageError("n must be nonnegative")
    return math.comb(n + g, g)


def filtration_dims_bruteforce(pres: Presentation, n: int, max_dim: int = DEFAULT_MAX_DIM) -> list[int]:
    """``[dim V_0, ..., dim V_n]`` by exact elimination.

    ``V_k`` is spanned by ``V_(k-1)`` together with ``b * g`` for every basis
    row ``b`` of ``V_(k-1)`` and every generator ``g``; each product is put
    into normal form and inserted into one growing echelon basis.
    """
    if n < 0:
        raise UsageError("n must be nonnegative")
    predicted = count_normal_monomials(pres, n)
    if predicted > max_dim:
        raise BudgetExceeded(f"dim V_{n} is expected to be {predicted} > budget {max_dim}")
    eb = EchelonBasis(key=lambda w: (len(w), w))
    one = pres.gens.one()
    eb.insert(one.terms)
    frontier = [one]
    dims = [eb.rank]
    gens = pres.gens.gens()
    for _ in range(n):
        new = []
        for b in frontier:
            for g in gens:
                prod = pres.nf_mul(b, g)
                if eb.insert(prod.terms):
                    # rows keep insertion order; the newest row is the new direction
                    new.append(Poly(pres.gens, eb.rows[next(reversed(eb.rows))]))
        frontier = new
        dims.append(eb.rank)
        if eb.rank > max_dim:
            raise BudgetExceeded(f"rank {eb.rank} exceeded budget {max_dim}")
    return dims


def filtration_dim_bruteforce(pres: Presentation, n: int, max_dim: int = DEFAULT_MAX_DIM) -> int:
    return filtration_dims_bruteforce(pres, n, max_dim)[-1]


def paper_formula(n: int) -> Fraction:
    """The closed form ``n^3/6 + n^2 + 11n/6`` printed for ``dim V_n`` of A."""
    return Fraction(n**3, 6) + n**2 + Fraction(11 * n, 6)


@dataclass(frozen=True)
class GrowthRow:
    n: int
    dim_counted: int
    dim_bruteforce: int | None = None
    method: str = "counted"


@dataclass
class GrowthTable:
    generators: int
    rows: list = field(default_factory=list)
    monotone: bool = True   # False only for synthetic tables fed to gk_estimate

    def __post_init__(self):
        self.validate()

    def validate(self):
        for a, b in zip(self.rows, self.rows[1:]):
            if a.n >= b.n:
                raise UsageError("growth table rows must strictly increase in n")
            if self.monotone and a.dim_counted >= b.dim_counted:
                raise UsageError("growth table dimensions must strictly increase")
        for r in self.rows:
            if r.dim_bruteforce is not None and r.dim_bruteforce != r.dim_counted:
                raise UsageError(f"n={r.n}: brute-force dimension {r.dim_bruteforce} "
                                 f"disagrees with count {r.dim_counted}")

    def dim(self, n: int) -> int | None:
        for r in self.rows:
            if r.n == n:
                return r.dim_counted
        return None

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.rows:
            pf = paper_formula(r.n) if self.generators == 3 else ""
            w.writerow([r.n, r.dim_counted, "" if r.dim_bruteforce is None else r.dim_bruteforce,
                        str(pf), r.method])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, generators: int = 0) -> "GrowthTable":
        reader = csv.DictReader(io.StringIO(text))
        if tuple(reader.fieldnames or ())[:2] != CSV_COLUMNS[:2]:
            raise UsageError(f"expected CSV columns {', '.join(CSV_COLUMNS)}")
        rows = []
        for rec in reader:
            bf = rec.get("dim_bruteforce") or None
            rows.append(GrowthRow(int(rec["n"]), int(rec["dim_counted"]),
                                  int(bf) if bf else None, rec.get("method") or "counted"))
        return cls(generators, rows)


def counted_table(pres: Presentation | int, ns) -> GrowthTable:
    g = pres if isinstance(pres, int) else len(pres.gens)
    return GrowthTable(g, [GrowthRow(n, count_normal_monomials(g, n)) for n in sorted(set(ns))])


def doubling_table(pres: Presentation | int, max_n: int) -> GrowthTable:
    """Counted rows at ``n = 1, 2, 4, ..., <= max_n``."""
    ns = [1]
    while ns[-1] * 2 <= max_n:
        ns.append(ns[-1] * 2)
    return counted_table(pres, ns)


def growth_table(pres: Presentation, max_n: int, bruteforce: bool = False,
                 max_dim: int = DEFAULT_MAX_DIM) -> GrowthTable:
    g = len(pres.gens)
    bf = filtration_dims_bruteforce(pres, max_n, max_dim) if bruteforce else None
    rows = [GrowthRow(n, count_normal_monomials(g, n), bf[n] if bf else None,
                      "bruteforce" if bf else "counted")
            for n in range(max_n + 1)]
    return GrowthTable(g, rows)


@dataclass(frozen=True)
class GKEstimate:
    method: str
    estimate: float
    n_used: int
    interval: tuple[float, float]   # bracket from the last two evaluation points
    ratio: Fraction | None = None   # dim(2n)/dim(n) for the doubling method

    def to_dict(self) -> dict:
        d = {"method": self.method, "estimate": self.estimate, "n_used": self.n_used,
             "interval": list(self.interval)}
        if self.ratio is not None:
            d["ratio"] = f"{self.ratio.numerator}/{self.ratio.denominator}"
        return d


def _slope(points):
    xs = [math.log(n) for n, _ in points]
    ys = [math.log(d) for _, d in points]
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    sxx = sum((x - mx) ** 2 for x in xs)
    return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sxx


def gk_estimate(table: GrowthTable, method: str = "doubling_ratio") -> GKEstimate:
    """Estimate ``limsup log dim V_n / log n`` from a finite table.

    ``doubling_ratio``: ``log2(dim(2n)/dim(n))`` at the largest ``n`` whose
    double is also tabulated.  ``loglog_tail``: least-squares slope of
    ``log dim`` against ``log n`` over the upper half of the rows with
    ``n >= 1``.  The interval spans the estimates at the last two usable
    points so the finite-``n`` drift is visible.
    """
    rows = [r for r in table.rows if r.n >= 1]
    if len(rows) < 4:
        raise UsageError("need at least 4 rows with n >= 1")
    if method == "doubling_ratio":
        dims = {r.n: r.dim_counted for r in rows}
        usable = sorted(n for n in dims if 2 * n in dims)
        if len(usable) < 2:
            raise UsageError("doubling_ratio needs rows at n and 2n for two values of n")
        vals = [math.log2(dims[2 * n]) - math.log2(dims[n]) for n in usable[-2:]]
        n = usable[-1]
        return GKEstimate(method, vals[-1], n, (min(vals), max(vals)),
                          Fraction(dims[2 * n], dims[n]))
    if method == "loglog_tail":
        pts = [(r.n, r.dim_counted) for r in rows]
        top = pts[len(pts) // 2:]
        if len(top) < 2:
            raise UsageError("not enough rows for a slope")
        est = _slope(top)
        prev = _slope(pts[len(pts) // 2 - 1:-1]) if len(pts) >= 4 else est
        return GKEstimate(method, est, top[-1][0], (min(est, prev), max(est, prev)))
    raise UsageError(f"unknown method {method!r}; use doubling_ratio or loglog_tail")


@dataclass(frozen=True)
class AuditRow:
    n: int
    closed_form: Fraction
    summed: int       # sum_{i<=n} (i+1)(i+2)/2
    enumerated: int   # C(n+3, 3)

    @property
    def offset(self) -> Fraction:
        return self.enumerated - self.closed_form


def paper_formula_audit(N: int) -> dict:
    """Compare the printed closed form for dim V_n of A with the true count, n = 0..N."""
    rows = []
    for n in range(N + 1):
        summed = sum((i + 1) * (i + 2) // 2 for i in range(n + 1))
        rows.append(AuditRow(n, paper_formula(n), summed, math.comb(n + 3, 3)))
    offsets = sorted({r.offset for r in rows})
    return {
        "rows": rows,
        "offsets": offsets,
        "constant_offset": offsets[0] if len(offsets) == 1 else None,
        "sum_matches_count": all(r.summed == r.enumerated for r in rows),
    }
