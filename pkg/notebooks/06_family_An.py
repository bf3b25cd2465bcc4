"""
The family A_n
==============

A_n adds Weyl pairs (x_i, z_i) for i >= 2 that commute with the copy of A.
Certificates first strip those pairs with [x_i, -] and [-, z_i].
"""

from gkwb import gk_estimate, doubling_table, parse_expr, presentation_An, reduce_to_scalar, to_text, verify_certificate

A3 = presentation_An(3)
print(A3.gens.names)

w = A3.nf(parse_expr("z3^2*x2 + x1*y*z2 - x3", A3.gens))
print("w =", to_text(w))
cert, _ = reduce_to_scalar(w, A3)
print("steps:", [t.token for t in cert.steps], "scalar", cert.final_scalar)
print("replay:", verify_certificate(cert, A3))

for n in (1, 2, 3):
    est = gk_estimate(doubling_table(2 * n + 1, 2**21))
    print(f"A_{n}: GK estimate {est.estimate:.5f} (expected {2 * n + 1})")
