"""Command-line front end.

Every command builds a :class:`~realizability.report.Report`.  The exit
status is 0 when the report passes, 1 when it fails, 3 when it is unknown
and 2 for usage, parse or budget errors.
"""

from __future__ import annotations

import argparse
import random
import sys

from .dco import (
    check_cartesian_samples,
    check_cartesian_shallow,
    check_dco_axioms,
    check_functional_completeness,
    check_functional_completeness_samples,
    induced_dco,
    reconstruct_pca,
)
from .dcofile import DcoDocument, DcoFileError, load_dco
from .exlex import ExCompletion, audit_without_limits, rt
from .fam import check_discrete, check_generic, compare_with_saturation, fiber_leq, identity_predicate
from .pasm import PAsm, PAsmObj, limit_checks
from .pca import SKPca, compile_polynomial, format_polynomial, parse_polynomial
from .pcalaws import check_basic_laws, check_combinatory_completeness
from .report import Check, Report, Verdict, check, emit_report
from .terms import Exhausted, TermSyntaxError, evaluate, expand_i, format_term, parse_term

EXIT = {Verdict.PASS: 0, Verdict.FAIL: 1, Verdict.UNKNOWN: 3}
USAGE_ERROR = 2


class UsageError(Exception):
    pass


def pasm_of(doc: DcoDocument) -> PAsm:
    if doc.cs is not None:
        return PAsm(doc.dco, doc.cs, doc.fc)
    return PAsm.over_finite(doc.dco)


# -- commands ----------------------------------------------------------------


def cmd_eval(args, report: Report) -> str | None:
    t = parse_term(args.term)
    try:
        nf = evaluate(expand_i(t) if args.expand else t, args.fuel)
    except Exhausted as exc:
        report.add(Check("normal form", Verdict.UNKNOWN, f"no normal form within {exc.spent} steps", exc.spent))
        return "unknown"
    text = format_term(nf)
    report.add(check("normal form", True, text))
    return text


def cmd_compile(args, report: Report) -> str | None:
    pca = SKPca()
    poly = parse_polynomial(args.polynomial)
    try:
        e = compile_polynomial(pca, poly, args.fuel)
    except Exhausted as exc:
        report.add(Check("compiled", Verdict.UNKNOWN, f"constant evaluation ran out after {exc.spent} steps"))
        return "unknown"
    text = format_term(e)
    report.add(check("compiled", True, f"{format_polynomial(poly)} => {text}"))
    return text


def cmd_pca_laws(args, report: Report) -> None:
    pca = SKPca()
    report.extend(check_combinatory_completeness(pca, random.Random(args.seed), fuel=args.fuel))
    report.extend(check_basic_laws(pca, random.Random(args.seed + 1), fuel=args.fuel))


def cmd_dco_check(args, report: Report) -> None:
    doc = load_dco(args.file)
    report.extend(check_dco_axioms(doc.dco))
    if doc.cs is not None:
        report.extend(check_cartesian_shallow(doc.dco, doc.cs))
    if doc.fc is not None:
        if doc.cs is None:
            report.add(check("functional completeness", False, "needs a cartesian block"))
        else:
            report.extend(check_functional_completeness(doc.dco, doc.cs, doc.fc))


def cmd_dco_induce(args, report: Report) -> None:
    from .dco import cartesian_witnesses_from_pca, functional_completeness_from_pca
    from .dco import Phi

    pca = SKPca()
    d = induced_dco(pca, args.fuel)
    cs = cartesian_witnesses_from_pca(pca, args.fuel)
    fc = functional_completeness_from_pca(pca, args.fuel)
    rng = random.Random(args.seed)
    report.extend(check_cartesian_samples(d, cs, rng, fuel=args.fuel))
    alphas = [Phi(pca.random_element(rng)) for _ in range(10)]
    report.extend(check_functional_completeness_samples(d, cs, fc, alphas, rng, fuel=args.fuel))


def cmd_dco_reconstruct(args, report: Report) -> None:
    if args.file:
        doc = load_dco(args.file)
        report.add(compare_with_saturation(doc.dco))
        mu = identity_predicate(doc.dco)
        report.add(check_discrete(doc.dco, mu, args.bound))
        report.add(check_generic(doc.dco, mu, args.bound))
        return
    from .dco import cartesian_witnesses_from_pca, functional_completeness_from_pca
    from .dco import below, tally

    pca = SKPca()
    d = induced_dco(pca, args.fuel)
    rebuilt = reconstruct_pca(d, cartesian_witnesses_from_pca(pca, args.fuel),
                              functional_completeness_from_pca(pca, args.fuel))
    rng = random.Random(args.seed)
    agree = []
    for _ in range(100):
        a, b = pca.random_element(rng), pca.random_element(rng)
        agree.append(below(lambda: pca.apply(a, b, args.fuel), lambda: rebuilt.apply(a, b, args.fuel)))
    report.add(tally("reconstructed application agrees", agree))


def _predicate(doc: DcoDocument, name: str):
    if name in doc.predicates:
        return doc.predicates[name]
    if name in doc.objects:
        return doc.objects[name]
    raise UsageError(f"no predicate named {name!r}")


def cmd_fam_leq(args, report: Report) -> None:
    doc = load_dco(args.file)
    phi, psi = _predicate(doc, args.phi), _predicate(doc, args.psi)
    if phi.index != psi.index:
        raise UsageError("predicates live over different index sets")
    r = fiber_leq(doc.dco, phi, psi)
    report.add(check(f"{args.phi} <= {args.psi}", r is not None, r.label if r is not None else "no realizer"))


def cmd_pasm_limits(args, report: Report) -> None:
    C = pasm_of(load_dco(args.file))
    if C.cs is None:
        report.extend(c for c in check_cartesian_shallow(C.dco, None) if not c.passed)
        return
    report.extend(limit_checks(C, args.bound))


def cmd_pasm_audit(args, report: Report) -> None:
    C = pasm_of(load_dco(args.file))
    report.extend(C.audit_characterization(args.bound).checks)


def cmd_exlex_audit(args, report: Report) -> None:
    C = pasm_of(load_dco(args.file))
    if C.cs is None:
        report.extend(audit_without_limits(C, args.bound).checks)
        return
    report.extend(ExCompletion(C).audit_theorem_4_6(args.bound).checks)


def parse_rt_object(topos, text: str):
    """``nabla:N``, ``T1,T2,...`` (embedded) or ``quot:T1,T2,...`` (full-relation quotient)."""
    if text.startswith("nabla:"):
        try:
            n = int(text[len("nabla:"):])
        except ValueError:
            raise UsageError(f"bad object {text!r}") from None
        return topos.nabla(range(n))
    quotient = text.startswith("quot:")
    body = text[len("quot:"):] if quotient else text
    values = tuple(evaluate(expand_i(parse_term(part)), topos.base.fuel)
                   for part in body.split(",") if part.strip())
    X = PAsmObj(tuple(range(len(values))), values)
    if quotient:
        return topos.relation_object(X, [(i, j) for i in X.index for j in X.index])
    return topos.embed(X)


def cmd_rt_hom(args, report: Report) -> None:
    topos = rt(SKPca(), fuel=args.fuel, depth=min(args.depth, 5))
    E, F = parse_rt_object(topos, args.source), parse_rt_object(topos, args.target)
    reps, verdict = topos.hom_search(E, F)
    listing = "; ".join(repr(m) for m in reps)
    report.add(Check(f"|hom| = {len(reps)}", verdict, listing or "none"))


COMMANDS = {
    "eval": cmd_eval,
    "compile": cmd_compile,
    "pca-laws": cmd_pca_laws,
    "dco-check": cmd_dco_check,
    "dco-induce": cmd_dco_induce,
    "dco-reconstruct": cmd_dco_reconstruct,
    "fam-leq": cmd_fam_leq,
    "pasm-limits": cmd_pasm_limits,
    "pasm-audit": cmd_pasm_audit,
    "exlex-audit": cmd_exlex_audit,
    "rt-hom": cmd_rt_hom,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fuel", type=int, default=100_000)
    common.add_argument("--depth", type=int, default=8)
    common.add_argument("--bound", type=int, default=2)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="write the report here")
    common.add_argument("--format", choices=("text", "structured"), default="text")

    parser = argparse.ArgumentParser(prog="realizability", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("eval", parents=[common], help="normalize an S/K term")
    p.add_argument("term")
    p.add_argument("--expand", action="store_true", help="expand I to S K K first")
    p = sub.add_parser("compile", parents=[common], help="bracket-abstract a polynomial")
    p.add_argument("polynomial")
    sub.add_parser("pca-laws", parents=[common], help="sampled PCA axioms over S/K")
    p = sub.add_parser("dco-check", parents=[common], help="DCO axioms and declared structure")
    p.add_argument("file")
    sub.add_parser("dco-induce", parents=[common], help="sampled checks of the DCO induced by S/K")
    p = sub.add_parser("dco-reconstruct", parents=[common],
                       help="rebuild a DCO from its fibration (file) or the PCA from its DCO")
    p.add_argument("file", nargs="?")
    p = sub.add_parser("fam-leq", parents=[common], help="compare two predicates of a file")
    p.add_argument("file")
    p.add_argument("phi")
    p.add_argument("psi")
    for name, text in (("pasm-limits", "finite-limit universal properties"),
                       ("pasm-audit", "characterization audit of PAsm"),
                       ("exlex-audit", "four-condition audit of the exact completion")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("file")
    p = sub.add_parser("rt-hom", parents=[common], help="hom-set in the realizability topos over S/K")
    p.add_argument("source")
    p.add_argument("target")
    return parser


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code else 0
    if args.fuel < 0 or args.depth < 0 or args.bound < 0:
        print("error: --fuel, --depth and --bound must be non-negative", file=sys.stderr)
        return USAGE_ERROR
    params = {"fuel": args.fuel, "depth": args.depth, "bound": args.bound}
    for key in ("term", "polynomial", "file", "phi", "psi", "source", "target"):
        if getattr(args, key, None) is not None:
            params[key] = getattr(args, key)
    report = Report(args.command, params=params, seed=args.seed)
    try:
        short = COMMANDS[args.command](args, report)
    except (TermSyntaxError, DcoFileError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    if args.out:
        emit_report(report, args.out, args.format)
    if args.format == "structured":
        stdout.write(report.to_json())
    elif short is not None:
        stdout.write(short + "\n")
    else:
        stdout.write(report.to_text())
    return EXIT[report.overall]


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
