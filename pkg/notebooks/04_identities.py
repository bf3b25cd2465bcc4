"""
Operator identities
===================

R_y = [-, y] lowers the (x, z)-degree by one and eventually kills every
element.  L_x^(j) = [x, -] + j y acts on y^i (x+z)^k by a three-term rule.
"""

from gkwb import RY, Lx, apply_op, lemma_check, lemma4_iterate, parse_expr, presentation_A, to_text, yu

A = presentation_A()

w = A.nf(parse_expr("x^2*z", A.gens))
print("R_y orbit of x^2 z:", [to_text(p) for p in lemma4_iterate(w, A)])

# x + z lies in the kernel of R_y
print("R_y(x+z) =", to_text(apply_op(RY, A.XZ, A)))

for j in range(3):
    print(f"L_x^({j})(y (x+z)^2) =", to_text(apply_op(Lx(j), yu(A, 1, 2), A)))

for lemma in ("2", "4", "5", "6", "7"):
    rep = lemma_check(lemma, A, 4)
    print(f"identity family {lemma}: {rep.cases} cases, {len(rep.failures)} failures")
