"""Command-line front end: ``gkwb <subcommand> ...``.

Exit codes: 0 success, 1 mathematical failure (nonzero residual, failed
lemma case, rejected certificate), 2 usage or parse error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache

from gkwb.core import to_text
from gkwb.errors import BudgetExceeded, TheoryViolation, UsageError
from gkwb.growth import (
    DEFAULT_MAX_DIM,
    GrowthTable,
    doubling_table,
    gk_estimate,
    growth_table,
    paper_formula_audit,
)
from gkwb.operators import lemma_check
from gkwb.parser import parse_element_file, parse_expr
from gkwb.presentations import presentation_from_tag
from gkwb.rewrite import DEFAULT_STEP_BUDGET, confluence_check, normal_form, parse_rules
from gkwb.simplicity import (
    Certificate,
    ideal_membership_oracle,
    random_corpus,
    reduce_to_scalar,
    verify_certificate,
)

EXIT_OK, EXIT_MATH, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


@lru_cache(maxsize=None)
def _presentation(tag):
    return presentation_from_tag(tag)


def _jobs(args) -> int:
    if args.jobs is not None:
        jobs = args.jobs
    else:
        try:
            jobs = int(os.environ.get("GKWB_JOBS", "1"))
        except ValueError:
            raise UsageError("GKWB_JOBS must be an integer") from None
    if jobs < 1:
        raise UsageError("--jobs must be positive")
    return jobs


def _pmap(fn, items, jobs):
    """Ordered map, optionally across processes."""
    if jobs == 1 or len(items) < 2:
        return [fn(i) for i in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _write(path, text):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc


def _rules_and_gens(args):
    if getattr(args, "rules", None):
        rs = parse_rules(_read(args.rules))
        return rs, rs.gens
    pres = _presentation(args.algebra)
    return pres.rules, pres.gens


def _elements(args, gens):
    if args.expr is not None and args.file is not None:
        raise UsageError("give either --expr or --file, not both")
    if args.expr is not None:
        return [parse_expr(args.expr, gens)]
    if args.file is not None:
        return parse_element_file(_read(args.file), gens)
    raise UsageError("an element is required: --expr or --file")


def _emit(obj, out=None):
    text = json.dumps(obj, indent=2)
    if out:
        _write(out, text + "\n")
    else:
        print(text)


# -- subcommands --------------------------------------------------------------


def cmd_reduce(args) -> int:
    rs, gens = _rules_and_gens(args)
    for p in _elements(args, gens):
        print(to_text(normal_form(p, rs, args.max_steps)))
    return EXIT_OK


def cmd_groebner_check(args) -> int:
    rs, _ = _rules_and_gens(args)
    if args.emit_rules:
        _write(args.emit_rules, rs.to_text())
    rep = confluence_check(rs, args.max_steps)
    ok = rep.all_reduce_to_zero
    if args.format == "json":
        _emit({"pairs": rep.describe(rs), "all_reduce_to_zero": ok})
    else:
        for d in rep.describe(rs):
            print(f"{d['kind']} {d['overlap']}: {d['rules'][0]} / {d['rules'][1]}")
            print(f"  s-polynomial {d['s_polynomial']}")
            print(f"  residual     {d['residual']}")
        n = len(rep.pairs)
        verdict = "all reduce to 0" if ok else "nonzero residuals"
        print(f"{n} pair{'s' if n != 1 else ''}, {verdict}")
    return EXIT_OK if ok else EXIT_MATH


def cmd_growth(args) -> int:
    pres = _presentation(args.algebra)
    table = growth_table(pres, args.max_n, args.bruteforce, args.max_dim)
    text = table.to_csv()
    if args.csv:
        _write(args.csv, text)
    print(text, end="")
    if args.audit:
        if len(pres.gens) != 3:
            raise UsageError("the closed-form audit applies to A only")
        audit = paper_formula_audit(args.max_n)
        print(f"closed form n^3/6+n^2+11n/6 vs C(n+3,3): offsets {[str(o) for o in audit['offsets']]}")
    return EXIT_OK


def cmd_gk_estimate(args) -> int:
    if args.csv:
        table = GrowthTable.from_csv(_read(args.csv))
    else:
        table = doubling_table(_presentation(args.algebra), 2 * args.max_n)
    est = gk_estimate(table, args.method)
    _emit(est.to_dict())
    return EXIT_OK


def cmd_lemma_check(args) -> int:
    pres = _presentation(args.algebra)
    rep = lemma_check(args.lemma, pres, args.max)
    _emit(rep.to_dict(), args.out)
    return EXIT_OK if rep.ok else EXIT_MATH


def _certify(job):
    tag, text, oracle_bound = job
    pres = _presentation(tag)
    w = parse_expr(text, pres.gens)
    cert, _ = reduce_to_scalar(w, pres)
    out = {"certificate": cert.to_dict(), "verified": bool(verify_certificate(cert, pres))}
    if oracle_bound is not None:
        out["oracle"] = ideal_membership_oracle(w, pres, oracle_bound).to_dict(pres)
    return out


def cmd_simplicity(args) -> int:
    pres = _presentation(args.algebra)
    if args.corpus:
        elems = random_corpus(pres, args.corpus, args.max_degree, seed=args.seed)
    else:
        elems = _elements(args, pres.gens)
    bound = args.deg_bound if args.oracle else None
    jobs = [(pres.name, to_text(pres.nf(w)), bound) for w in elems]
    results = _pmap(_certify, jobs, _jobs(args))
    if args.emit_cert:
        if len(results) != 1:
            raise UsageError("--emit-cert needs exactly one element")
        _write(args.emit_cert, json.dumps(results[0]["certificate"], indent=2) + "\n")
    _emit(results[0] if len(results) == 1 else results)
    ok = all(r["verified"] and r.get("oracle", {"contains_one": True})["contains_one"] for r in results)
    return EXIT_OK if ok else EXIT_MATH


def cmd_verify_cert(args) -> int:
    cert = Certificate.from_json(_read(args.cert))
    pres = _presentation(cert.algebra)
    res = verify_certificate(cert, pres)
    print("valid" if res.ok else f"invalid: {res.reason}")
    return EXIT_OK if res.ok else EXIT_MATH


def cmd_oracle(args) -> int:
    pres = _presentation(args.algebra)
    out = []
    for w in _elements(args, pres.gens):
        res = ideal_membership_oracle(w, pres, args.deg_bound, args.max_products)
        out.append({"input": to_text(pres.nf(w)), **res.to_dict(pres)})
    _emit(out[0] if len(out) == 1 else out)
    return EXIT_OK if all(r["contains_one"] for r in out) else EXIT_MATH


# -- argument parsing ---------------------------------------------------------


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonneg(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", default="A", help="A or An:<n> (default A)")
    common.add_argument("--jobs", type=_positive, default=None,
                        help="worker processes (default $GKWB_JOBS or 1)")
    common.add_argument("--seed", type=int, default=0, help="seed for random corpora")

    def elem(p):
        p.add_argument("--expr", help="element in the expression grammar")
        p.add_argument("--file", help="element file: one expression per line, # comments")

    ap = argparse.ArgumentParser(prog="gkwb", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", parents=[common], help="print normal forms")
    elem(p)
    p.add_argument("--rules", help="rule file (word -> poly per line) instead of --algebra")
    p.add_argument("--max-steps", type=_positive, default=DEFAULT_STEP_BUDGET)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("groebner-check", parents=[common], help="check all critical pairs")
    p.add_argument("--rules", help="rule file instead of --algebra")
    p.add_argument("--max-steps", type=_positive, default=DEFAULT_STEP_BUDGET)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--emit-rules", help="write the rule system in rule-file format")
    p.set_defaults(func=cmd_groebner_check)

    p = sub.add_parser("growth", parents=[common], help="filtration dimension table")
    p.add_argument("--max-n", type=_nonneg, default=7)
    p.add_argument("--bruteforce", action="store_true", help="also compute exact span ranks")
    p.add_argument("--max-dim", type=_positive, default=DEFAULT_MAX_DIM,
                   help="brute-force budget on dim V_n")
    p.add_argument("--csv", help="write the table as CSV")
    p.add_argument("--audit", action="store_true", help="compare with the printed closed form")
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("gk-estimate", parents=[common], help="estimate GK dimension")
    p.add_argument("--max-n", type=_positive, default=2**20)
    p.add_argument("--method", choices=("doubling_ratio", "loglog_tail"), default="doubling_ratio")
    p.add_argument("--csv", help="read a growth CSV instead of counting")
    p.set_defaults(func=cmd_gk_estimate)

    p = sub.add_parser("lemma-check", parents=[common], help="bounded identity checks")
    p.add_argument("--lemma", required=True, choices=("2", "4", "5", "6", "7"))
    p.add_argument("--max", type=_nonneg, required=True)
    p.add_argument("--out", help="write the JSON report here")
    p.set_defaults(func=cmd_lemma_check)

    p = sub.add_parser("simplicity", parents=[common], help="certify that an element generates 1")
    elem(p)
    p.add_argument("--corpus", type=_positive, help="certify N random elements instead")
    p.add_argument("--max-degree", type=_nonneg, default=5)
    p.add_argument("--oracle", action="store_true", help="cross-check with the brute-force oracle")
    p.add_argument("--deg-bound", type=_nonneg, default=4)
    p.add_argument("--emit-cert", help="write the certificate JSON here")
    p.set_defaults(func=cmd_simplicity)

    p = sub.add_parser("verify-cert", parents=[common], help="replay a certificate")
    p.add_argument("cert")
    p.set_defaults(func=cmd_verify_cert)

    p = sub.add_parser("oracle", parents=[common], help="brute-force 1 in (w) test")
    elem(p)
    p.add_argument("--deg-bound", type=_nonneg, default=4)
    p.add_argument("--max-products", type=_positive, default=100_000)
    p.set_defaults(func=cmd_oracle)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except TheoryViolation as exc:
        print(f"theory violation: {exc}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
