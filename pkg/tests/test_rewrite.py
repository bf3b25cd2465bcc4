import itertools
import random

import pytest

from gkwb.core import GeneratorSet, Poly
from gkwb.errors import BudgetExceeded, UsageError
from gkwb.parser import parse_expr
from gkwb.rewrite import (
    CriticalPair,
    RewriteRule,
    RuleSystem,
    confluence_check,
    critical_pairs,
    fast_normal_form,
    normal_form,
    parse_rules,
    reduce_once,
    s_polynomial,
)

A_RULES = """\
gens: x y z
y*x -> x*y - 1
z*y -> y*z - 1
z*x -> x*z + x*y + y*z
"""


@pytest.fixture(scope="module")
def F():
    return parse_rules(A_RULES)


@pytest.fixture
def E(F):
    return lambda text: parse_expr(text, F.gens)


def random_free_poly(gens, rng, max_degree, max_terms=5, coeff_range=3):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        w = tuple(rng.randrange(len(gens)) for _ in range(rng.randint(0, max_degree)))
        terms[w] = rng.randint(-coeff_range, coeff_range)
    return Poly(gens, terms)


def test_reduce_once_examples(F, E):
    assert reduce_once(E("y*x"), F) == (E("x*y - 1"), True)
    assert reduce_once(E("x*y*z"), F) == (E("x*y*z"), False)
    # leftmost redex of zyx is zy
    assert reduce_once(E("z*y*x"), F) == (E("(y*z - 1)*x"), True)


def test_reduce_once_picks_greatest_word(F, E):
    p, changed = reduce_once(E("y*x + z*z*x"), F)
    assert changed and p == E("y*x + z*(x*z + x*y + y*z)")


def test_normal_form_examples(F, E):
    assert normal_form(E("y*x"), F) == E("x*y - 1")
    assert normal_form(E("z*y*x"), F) == normal_form(E("z*(x*y - 1)"), F)
    assert normal_form(E("(x+z)^2"), F) == E("x^2 + 2*x*z + x*y + y*z + z^2")


def test_critical_pairs_of_A(F):
    pairs = critical_pairs(F)
    assert pairs == [CriticalPair(1, 0, (2, 1, 0), (2,), (0,), "overlap")]


def test_critical_pairs_single_rule():
    G = GeneratorSet(["x", "y", "z"])
    rs = RuleSystem.from_pairs(G, [((1, 0), parse_expr("x*y - 1", G))])
    assert critical_pairs(rs) == []


def test_self_overlap():
    G = GeneratorSet(["a"])
    rs = RuleSystem.from_pairs(G, [((0, 0), G.one())])
    pairs = critical_pairs(rs)
    assert [p.overlap_word for p in pairs] == [(0, 0, 0)]
    assert s_polynomial(pairs[0], rs) == 0


def test_inclusion_pairs():
    G = GeneratorSet(["a", "b"])
    rs = parse_rules("gens: a b\nb*a*b -> a\nb*a -> a*b\n")
    pairs = critical_pairs(rs)
    kinds = {(p.rule_a, p.rule_b, p.kind) for p in pairs}
    assert (0, 1, "inclusion") in kinds
    incl = next(p for p in pairs if p.kind == "inclusion")
    assert incl.overlap_word == (1, 0, 1)
    # a  vs  a*b*b
    assert s_polynomial(incl, rs) == parse_expr("a - a*b*b", G)


def test_inclusion_with_identical_rule_is_zero(F):
    pair = CriticalPair(0, 0, (1, 0), (), (), "inclusion")
    assert s_polynomial(pair, F) == 0


def test_s_polynomial_of_A(F, E):
    (pair,) = critical_pairs(F)
    assert s_polynomial(pair, F) == E("(y*z - 1)*x - z*(x*y - 1)")
    assert normal_form(s_polynomial(pair, F), F) == 0


def test_confluence_of_A(F):
    rep = confluence_check(F)
    assert len(rep.pairs) == 1 and rep.all_reduce_to_zero


def test_inconsistent_variant_terminates():
    rs = parse_rules("gens: x y z\ny*x -> x*y - 1\nz*y -> y*z\n")
    rep = confluence_check(rs)
    assert len(rep.pairs) == 1
    assert not rep.all_reduce_to_zero


def test_rule_must_decrease():
    G = GeneratorSet(["x", "y"])
    with pytest.raises(UsageError):
        RewriteRule((0, 1), parse_expr("y*x", G))
    with pytest.raises(UsageError):
        RewriteRule((), G.one())


def test_duplicate_lhs_rejected():
    with pytest.raises(UsageError):
        parse_rules("gens: x y\ny*x -> x*y\ny*x -> x*y - 1\n")


def test_rule_text_round_trip(F):
    again = parse_rules(F.to_text())
    assert [(r.lhs, r.rhs) for r in again.rules] == [(r.lhs, r.rhs) for r in F.rules]


def test_rule_file_errors():
    with pytest.raises(UsageError):
        parse_rules("y*x -> x*y\n")
    with pytest.raises(UsageError):
        parse_rules("gens: x y\n2*y*x -> x*y\n")
    with pytest.raises(UsageError):
        parse_rules("gens: x y\ny*x = x*y\n")


def test_step_budget(F, E):
    with pytest.raises(BudgetExceeded):
        normal_form(E("z^3*x^3"), F, max_steps=5)


def test_normal_words_are_sorted_monomials(F):
    for d in range(7):
        for w in itertools.product(range(3), repeat=d):
            nf = normal_form(Poly(F.gens, {w: 1}), F)
            for ww in nf.terms:
                assert list(ww) == sorted(ww)


def test_strategies_agree(F):
    rng = random.Random(7)
    for _ in range(1000):
        p = random_free_poly(F.gens, rng, 6)
        left = normal_form(p, F, strategy="leftmost")
        assert left == normal_form(p, F, strategy="rightmost")
        assert left == fast_normal_form(p, F)


def test_ideal_invariance(F):
    rng = random.Random(11)
    for _ in range(200):
        p = random_free_poly(F.gens, rng, 3, max_terms=3)
        q = random_free_poly(F.gens, rng, 3, max_terms=3)
        for rule in F.rules:
            assert normal_form(p * rule.poly * q, F) == 0


def test_every_step_decreases(F):
    # multiset order: the greatest word whose coefficient changed must have been removed
    rng = random.Random(3)
    for _ in range(100):
        p = random_free_poly(F.gens, rng, 5)
        while True:
            q, changed = reduce_once(p, F)
            if not changed:
                break
            diff = [w for w in set(p.terms) | set(q.terms) if p.coeff(w) != q.coeff(w)]
            top = max(diff, key=lambda w: (len(w), w))
            assert top in p.terms and top not in q.terms
            p = q
