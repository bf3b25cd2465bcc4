"""Exact computer algebra for the simple algebras A and A_n.

Normal forms and confluence checks for noncommutative rewriting, growth of
the standard filtration, and replayable certificates that every nonzero
element generates the whole algebra.
"""

from gkwb.core import GeneratorSet, Poly, commutator, poly_add, poly_mul, to_text, word_cmp
from gkwb.errors import BudgetExceeded, GKWBError, TheoryViolation, UsageError
from gkwb.growth import (
    GKEstimate,
    GrowthRow,
    GrowthTable,
    count_normal_monomials,
    doubling_table,
    filtration_dim_bruteforce,
    filtration_dims_bruteforce,
    gk_estimate,
    growth_table,
    paper_formula_audit,
)
from gkwb.operators import (
    RY,
    LemmaReport,
    Lx,
    OperatorTag,
    apply_op,
    apply_ops,
    lemma2_check,
    lemma4_iterate,
    lemma5_decompose,
    lemma6_step,
    lemma7_check,
    lemma_check,
    yu,
)
from gkwb.parser import ParseError, parse_expr
from gkwb.presentations import (
    Presentation,
    XZBasisElem,
    from_xz_basis,
    presentation_A,
    presentation_An,
    presentation_from_tag,
    to_xz_basis,
)
from gkwb.rewrite import (
    RewriteRule,
    RuleSystem,
    confluence_check,
    critical_pairs,
    normal_form,
    parse_rules,
    reduce_once,
    s_polynomial,
)
from gkwb.simplicity import (
    Certificate,
    OracleResult,
    combination_value,
    ideal_membership_oracle,
    random_corpus,
    random_element,
    reduce_to_scalar,
    verify_certificate,
)

__version__ = "0.1.0"
