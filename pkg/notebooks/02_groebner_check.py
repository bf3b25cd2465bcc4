"""
Confluence of the rewrite system
================================

Overlaps between left-hand sides give critical pairs.  If every
S-polynomial reduces to zero, normal forms are unique.
"""

from gkwb import confluence_check, parse_rules, presentation_A, presentation_An, to_text

A = presentation_A()
rep = confluence_check(A.rules)
for d in rep.describe(A.rules):
    print(d["kind"], d["overlap"], "| S =", d["s_polynomial"], "| residual", d["residual"])

# the A_n family has many more pairs, all of them harmless
for n in (1, 2, 3):
    r = confluence_check(presentation_An(n).rules)
    print(f"A_{n}: {len(r.pairs)} pairs, confluent = {r.all_reduce_to_zero}")

# drop the y*z term from [x,z] and the single overlap stops closing up
broken = parse_rules("""gens: x y z
y*x -> x*y - 1
z*y -> y*z - 1
z*x -> x*z + x*y
""")
r = confluence_check(broken)
print("broken system residuals:", [to_text(p) for p in r.residuals])
