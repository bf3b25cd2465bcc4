import math

import pytest

from gkwb.errors import BudgetExceeded, UsageError
from gkwb.growth import (
    CSV_COLUMNS,
    GrowthRow,
    GrowthTable,
    count_normal_monomials,
    doubling_table,
    filtration_dim_bruteforce,
    filtration_dims_bruteforce,
    gk_estimate,
    growth_table,
    paper_formula,
    paper_formula_audit,
)


def test_counts(A, A2):
    assert count_normal_monomials(A, 0) == 1
    assert count_normal_monomials(A, 2) == 10
    assert count_normal_monomials(A2, 1) == 6
    with pytest.raises(UsageError):
        count_normal_monomials(A, -1)


def test_bruteforce_matches_count(A, A2):
    assert filtration_dims_bruteforce(A, 7) == [math.comb(n + 3, 3) for n in range(8)]
    assert filtration_dims_bruteforce(A2, 4) == [math.comb(n + 5, 5) for n in range(5)]
    assert filtration_dim_bruteforce(A, 3) == 20


def test_bruteforce_budget(A, A2):
    with pytest.raises(BudgetExceeded):
        filtration_dims_bruteforce(A, 8)
    with pytest.raises(BudgetExceeded):
        filtration_dims_bruteforce(A2, 3, max_dim=20)


def test_growth_table_columns(A):
    t = growth_table(A, 4, bruteforce=True)
    lines = t.to_csv().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert lines[2] == "1,4,4,3,bruteforce"
    back = GrowthTable.from_csv(t.to_csv(), 3)
    assert back.rows == t.rows


def test_table_rejects_disagreement():
    with pytest.raises(UsageError):
        GrowthTable(3, [GrowthRow(0, 1, 2)])
    with pytest.raises(UsageError):
        GrowthTable(3, [GrowthRow(1, 4), GrowthRow(1, 5)])
    with pytest.raises(UsageError):
        GrowthTable(3, [GrowthRow(1, 4), GrowthRow(2, 4)])
    with pytest.raises(UsageError):
        GrowthTable.from_csv("a,b\n1,2\n")


def test_doubling_estimates(A, A2):
    est = gk_estimate(doubling_table(A, 2**21))
    assert est.n_used == 2**20
    assert 2.99 <= est.estimate <= 3.0
    assert est.interval[0] <= est.estimate <= est.interval[1]
    assert 4.99 <= gk_estimate(doubling_table(A2, 2**21)).estimate <= 5.0


def test_estimates_converge_from_below():
    prev = 0
    for k in range(3, 21):
        est = gk_estimate(doubling_table(3, 2**(k + 1))).estimate
        assert prev < est < 3
        prev = est
    assert 3 - prev < 1e-5


def test_loglog_tail():
    t = doubling_table(3, 2**20)
    est = gk_estimate(t, "loglog_tail")
    assert 2.99 < est.estimate < 3.0
    assert est.n_used == 2**20


def test_constant_table_slope_zero():
    rows = [GrowthRow(n, 7) for n in (1, 2, 4, 8, 16)]
    t = GrowthTable(0, rows, monotone=False)
    assert gk_estimate(t, "loglog_tail").estimate == pytest.approx(0.0, abs=1e-12)
    assert gk_estimate(t, "doubling_ratio").estimate == 0.0


def test_short_table_rejected():
    with pytest.raises(UsageError):
        gk_estimate(doubling_table(3, 4))
    with pytest.raises(UsageError):
        gk_estimate(doubling_table(3, 64), "bogus")


def test_paper_formula_audit():
    assert paper_formula(1) == 3 and math.comb(4, 3) == 4
    assert paper_formula(2) == 9 and math.comb(5, 3) == 10
    audit = paper_formula_audit(100)
    assert audit["constant_offset"] == 1
    assert audit["sum_matches_count"]
    assert len(audit["rows"]) == 101
