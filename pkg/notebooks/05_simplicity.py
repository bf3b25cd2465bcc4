"""
Every nonzero element generates 1
=================================

reduce_to_scalar records a sequence of ideal-preserving operators that
turns w into a nonzero constant.  The verifier replays it from scratch, and
a brute-force span computation gives an unrelated second opinion.
"""

from gkwb import (
    combination_value,
    ideal_membership_oracle,
    parse_expr,
    presentation_A,
    random_corpus,
    reduce_to_scalar,
    verify_certificate,
)

A = presentation_A()

w = A.nf(parse_expr("x^2*z - 3*y^2*z + 1/2*x", A.gens))
cert, trace = reduce_to_scalar(w, A)
print(cert.to_json())
print("replay:", verify_certificate(cert, A))
print("kernel element reached after the R_y phase:", trace.kernel_element)

res = ideal_membership_oracle(w, A, 3)
print("oracle finds 1 in (w):", res.contains_one, "after", res.products, "products")
if res.contains_one:
    print("witness evaluates to", combination_value(res.combination, w, A))

corpus = random_corpus(A, 100, 5, seed=7)
ok = sum(bool(verify_certificate(reduce_to_scalar(v, A)[0], A)) for v in corpus)
print(f"{ok}/{len(corpus)} random elements certified")
