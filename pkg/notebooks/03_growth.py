"""
Growth of the filtration
========================

dim V_n is predicted by counting sorted monomials and confirmed by exact
rank computations.  The doubling ratio then estimates the GK dimension.
"""

import math

from gkwb import (
    doubling_table,
    filtration_dims_bruteforce,
    gk_estimate,
    growth_table,
    paper_formula_audit,
    presentation_A,
    presentation_An,
)

A = presentation_A()
print(growth_table(A, 7, bruteforce=True).to_csv())

A2 = presentation_An(2)
print("A_2 ranks:", filtration_dims_bruteforce(A2, 4),
      "counted:", [math.comb(n + 5, 5) for n in range(5)])

for pres in (A, A2):
    est = gk_estimate(doubling_table(pres, 2**21))
    print(f"{pres.name}: GK estimate {est.estimate:.6f} at n = {est.n_used}, interval {est.interval}")

# the printed closed form sits exactly one below the true count
audit = paper_formula_audit(10)
for row in audit["rows"][:6]:
    print(row.n, row.closed_form, row.enumerated, "offset", row.offset)
print("constant offset over n <= 10:", audit["constant_offset"])
