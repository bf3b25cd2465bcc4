"""
Normal forms in A
=================

Elements are parsed from text and rewritten into the sorted basis
x^i y^j z^k.  Coefficients are exact fractions throughout.
"""

from gkwb import parse_expr, presentation_A, to_text

A = presentation_A()

# the three defining rules, oriented so the right side is deg-lex smaller
print(A.rules.to_text())

# (x+z)^2 picks up the xy + yz correction from [x,z]
for text in ["(x+z)^2", "z*y*x", "[x, z]", "1/2*z^2*x - 3/4"]:
    w = A.nf(parse_expr(text, A.gens))
    print(f"{text:>22}  ->  {to_text(w)}")

# products of normal forms stay normal
a = A.nf(parse_expr("x + y", A.gens))
b = A.nf(parse_expr("z - 2", A.gens))
print("(x + y)(z - 2) =", to_text(A.nf_mul(a, b)))
print("[a, b]         =", to_text(A.bracket(a, b)))
