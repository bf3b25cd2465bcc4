import json
import random
from fractions import Fraction

import pytest

from gkwb.core import Poly
from gkwb.errors import BudgetExceeded, TheoryViolation, UsageError
from gkwb.operators import RY, Lx, OperatorTag, apply_op
from gkwb.parser import parse_expr
from gkwb.presentations import yu_poly
from gkwb.simplicity import (
    Certificate,
    combination_value,
    ideal_membership_oracle,
    lx_on_coords,
    random_corpus,
    reduce_to_scalar,
    verify_certificate,
)


def cert_for(pres, text):
    return reduce_to_scalar(pres.nf(parse_expr(text, pres.gens)), pres)[0]


@pytest.mark.parametrize("text, steps, scalar", [
    ("x", ["Ry"], 1),
    ("y^2", ["Lx:0", "Lx:0"], 2),
    ("x^2*z", ["Ry", "Ry", "Ry"], -6),
    ("7", [], 7),
    ("x + z", ["Lx:1"], -1),
])
def test_certificate_examples(A, text, steps, scalar):
    cert = cert_for(A, text)
    assert [t.token for t in cert.steps] == steps
    assert cert.final_scalar == scalar
    assert verify_certificate(cert, A)


def test_An_certificate(A2):
    cert = cert_for(A2, "x2*z1")
    assert [t.token for t in cert.steps] == ["RadZ:2", "Ry"]
    assert cert.final_scalar == -1
    assert verify_certificate(cert, A2)


def test_zero_rejected(A):
    with pytest.raises(UsageError):
        reduce_to_scalar(A.gens.zero(), A)


def test_tampered_certificates_fail(A, A2):
    cert = cert_for(A, "x^2*z + y")
    assert verify_certificate(cert, A)
    bad_scalar = Certificate(cert.algebra, cert.input, cert.steps, cert.final_scalar + 1)
    assert not verify_certificate(bad_scalar, A)
    dropped = Certificate(cert.algebra, cert.input, cert.steps[:-1], cert.final_scalar)
    assert not verify_certificate(dropped, A)
    other = Certificate(cert.algebra, cert.input.scale(2), cert.steps, cert.final_scalar)
    assert not verify_certificate(other, A)
    assert not verify_certificate(Certificate("A", A.X, (), Fraction(0)), A)
    # right steps, wrong algebra
    res = verify_certificate(cert, A2)
    assert not res and "not An:2" in res.reason
    # an auxiliary operator cannot be replayed on A
    aux = Certificate("A", A.X, (OperatorTag("AdX", 2),), Fraction(1))
    assert not verify_certificate(aux, A)


def test_json_round_trip(A, validate):
    cert = cert_for(A, "3/2*x*y*z - y^3 + 2")
    d = cert.to_dict()
    validate(d, "certificate")
    assert d["final_scalar"].count("/") == 1
    back = Certificate.from_json(cert.to_json())
    assert back == cert
    assert verify_certificate(back, A)


@pytest.mark.parametrize("text", ["{", "[]", '{"algebra": "A"}',
                                  '{"algebra": "A", "input": "x", "steps": ["Rq"], "final_scalar": "1"}',
                                  '{"algebra": "B", "input": "x", "steps": [], "final_scalar": "1"}',
                                  '{"algebra": "A", "input": "x", "steps": [], "final_scalar": "1/0"}'])
def test_malformed_json(text):
    with pytest.raises(UsageError):
        Certificate.from_json(text)


def test_lx_closed_form_matches_arithmetic(A):
    rng = random.Random(3)
    for _ in range(40):
        coords = {(rng.randint(0, 3), rng.randint(0, 3)): rng.randint(-4, 4) for _ in range(3)}
        coords = {k: v for k, v in coords.items() if v}
        for j in range(5):
            assert yu_poly(A, lx_on_coords(coords, j)) == apply_op(Lx(j), yu_poly(A, coords), A)


def test_trace_lands_in_kernel(A):
    for w in random_corpus(A, 30, 4, seed=11):
        cert, trace = reduce_to_scalar(w, A)
        k = trace.kernel_element
        assert k and apply_op(RY, k, A) == 0
        assert len(trace) == len(cert.steps)
        # the kernel phase only uses Lx
        n_ry = sum(1 for t in cert.steps if t == RY)
        assert all(t.kind == "Lx" for t in cert.steps[n_ry:])


def test_corpus_certifies(A, A2):
    for pres, n, d in ((A, 40, 5), (A2, 15, 3)):
        for w in random_corpus(pres, n, d, seed=5):
            cert, _ = reduce_to_scalar(w, pres)
            assert cert.final_scalar != 0
            assert verify_certificate(cert, pres)


def test_corpus_is_reproducible(A):
    assert random_corpus(A, 10, 4, seed=1) == random_corpus(A, 10, 4, seed=1)
    assert random_corpus(A, 10, 4, seed=1) != random_corpus(A, 10, 4, seed=2)
    assert all(isinstance(w, Poly) and w for w in random_corpus(A, 50, 3))


def test_oracle_examples(A, validate):
    res = ideal_membership_oracle(A.X, A, 1)
    assert res.contains_one
    assert combination_value(res.combination, A.X, A) == 1
    validate(res.to_dict(A), "oracle_result")
    # a scalar is found with no products beyond the first
    assert ideal_membership_oracle(A.gens.one().scale(5), A, 0).products == 1


def test_oracle_bound_too_small(A):
    res = ideal_membership_oracle(parse_expr("x^3", A.gens), A, 1)
    assert not res.contains_one and res.combination is None


def test_oracle_budget(A):
    with pytest.raises(BudgetExceeded):
        ideal_membership_oracle(A.X, A, 6, max_products=100)


def test_oracle_witnesses(A):
    for w in random_corpus(A, 8, 3, seed=21):
        res = ideal_membership_oracle(w, A, 4)
        assert res.contains_one
        assert combination_value(res.combination, w, A) == 1


def test_kernel_hypothesis_violation_is_reported(A, monkeypatch):
    import gkwb.simplicity as simp

    def broken(p, pres, a0_only=False):
        from gkwb.presentations import NotInSpan
        raise NotInSpan("forced", p)

    monkeypatch.setattr(simp, "to_xz_basis", broken)
    with pytest.raises(TheoryViolation) as info:
        reduce_to_scalar(A.X, A)
    assert info.value.witness == 1
