"""Command-line front end: ``beckdiff <command> ...``.

Exit codes: 0 when every case passes, 3 when a mathematical check fails,
2 on input errors (bad JSON or grammar, unknown flags, resource limits).
"""

from __future__ import annotations

import argparse
import sys

from . import corpus
from ._gbcore import DEFAULT_LIMITS, Limits, limits_scope
from .beck import lift_check, pullback_module, unramified_check, verify_torsor
from .errors import BeckDiffError, InputError, ResourceLimit
from .runner import ERROR, FAIL, PASS, CaseReport, RunReport, corpus_run
from .serialize import dumps, load_json, read_algebra, read_beck_module, read_hom, read_surjection

__all__ = ["main", "run_command", "build_parser"]


def _omega_lines(P):
    gens = ", ".join(P.generators) or "(none)"
    rels = "; ".join(repr(r) for r in P.relations) or "(none)"
    return [f"Omega generators: {gens}", f"Omega relations: {rels}"]


def _dual_text(pair, omega_gens):
    value, coeffs = pair
    terms = [f"({c})*{g}" for c, g in zip(coeffs, omega_gens) if c not in ("0", 0)]
    return f"({value}, {' + '.join(terms) or '0'})"


def _single(command, case_id, verdict, details, text):
    return RunReport(command, [CaseReport(case_id, command, verdict, details)]), text


# ---------------------------------------------------------------------------
# commands; each returns (RunReport, text lines)


def cmd_kahler(args):
    B = read_algebra(load_json(args.algebra), args.algebra)
    r = unramified_check(B, witness=False)
    d = r.to_json()
    d["omega_zero"] = r.unramified
    d["omega_dimension"] = r.kahler.dimension()
    word = "zero" if r.unramified else "nonzero"
    text = [f"algebra: {B!r}", *_omega_lines(r.kahler.presentation), f"Omega: {word}"]
    return _single("kahler", "kahler", PASS, d, text)


def cmd_unramified(args):
    B = read_algebra(load_json(args.algebra), args.algebra)
    r = unramified_check(B, witness=args.witness)
    d = r.to_json()
    text = [f"algebra: {B!r}", f"formally unramified: {str(r.unramified).lower()}"]
    if r.unramified:
        text.append(f"certificate verified: {str(d['certificate_verified']).lower()}")
    else:
        text.append(f"nonzero differential: {d['nonzero_generator']}")
        if r.witness is not None:
            w = d["witness"]
            omega_gens = d["omega"]["generators"]
            for name, s0, s1 in zip(B.generators, w["s0"], w["s1"]):
                a, b = _dual_text(s0, omega_gens), _dual_text(s1, omega_gens)
                text.append(f"  s0({name}) = {a}   s1({name}) = {b}")
            text.append(f"witness verified: {str(w['verified']).lower()}")
        elif r.witness_error:
            text.append(r.witness_error)
    return _single("unramified", "unramified", PASS if r.unramified else FAIL, d, text)


def cmd_torsor_verify(args):
    q = read_surjection(load_json(args.surjection))
    try:
        T = verify_torsor(q)
    except BeckDiffError as exc:
        if isinstance(exc, InputError):
            raise
        d = {"error": type(exc).__name__, "message": str(exc)}
        if getattr(exc, "witness", None) is not None:
            d["witness"] = list(exc.witness)
        return _single("torsor verify", "torsor", FAIL, d, [f"{type(exc).__name__}: {exc}"])
    d = T.to_json()
    text = [
        "Beck torsor: valid",
        f"kernel: {{{', '.join(d['kernel'])}}}",
        f"split: {str(T.split).lower()}",
        f"|M x_Y Z| = {T.fiber_product_size} = |Z x_Y Z|",
    ]
    return _single("torsor verify", "torsor", PASS, d, text)


def _read_target(obj):
    if isinstance(obj, dict) and "module" in obj:
        return read_beck_module(obj)
    return verify_torsor(read_surjection(obj))


def cmd_lift_check(args):
    B = read_algebra(load_json(args.domain), args.domain)
    T = _read_target(load_json(args.torsor))
    r = lift_check(B, T)
    d = r.to_json()
    # surjectivity is only forced for Beck modules
    ok = r.injective and (r.surjective or not r.for_module)
    text = [f"injective: {str(r.injective).lower()}", f"surjective: {str(r.surjective).lower()}"]
    if r.colliding_pair is not None:
        a, b = r.colliding_pair
        text.append(f"colliding pair: {list(a)} and {list(b)}")
    text.append(", ".join(f"|{k}| = {v}" for k, v in sorted(r.hom_counts.items())))
    return _single("lift check", "lift", PASS if ok else FAIL, d, text)


def cmd_pullback(args):
    psi = read_hom(load_json(args.hom))
    M = read_beck_module(load_json(args.module))
    P = pullback_module(psi, M)
    objects = [psi.domain, *corpus.test_objects()]
    up = P.universal_property(objects)
    ok = all(u["all_unique"] for u in up)
    d = {
        "pullback_size": P.pullback.total.size,
        "module_size": P.pullback.module.size,
        "base_size": P.pullback.base.size,
        "universal_property": [dict(u, object=repr(X)) for u, X in zip(up, objects)],
        "module": P.pullback.module.to_json(),
    }
    text = [
        f"pullback: {P.pullback.base.size} x {P.pullback.module.size} = {P.pullback.total.size} elements",
        f"universal property: {'unique factorization' if ok else 'FAILED'} on {len(objects)} test objects",
    ]
    return _single("pullback", "pullback", PASS if ok else FAIL, d, text)


def cmd_groups_unramified(args):
    report = corpus_run("groups", args.max_order, 0)
    cases = [c for c in report.cases if c.case_id.startswith("group/")]
    rep = RunReport(f"groups unramified --max-order {args.max_order}", cases, {
        "unramified groups found": report.summary["unramified groups found"],
        "groups": len(cases),
    })
    return rep, None


def cmd_corpus_run(args):
    return corpus_run(args.suite, args.max_size, args.seed), None


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--max-homs", type=int, default=DEFAULT_LIMITS.max_homs)
    common.add_argument("--max-degree", type=int, default=DEFAULT_LIMITS.max_degree)
    common.add_argument("--max-terms", type=int, default=DEFAULT_LIMITS.max_terms)
    common.add_argument("--timings", action="store_true", help="include elapsed_ms (breaks byte-identical reports)")

    parser = argparse.ArgumentParser(prog="beckdiff", description="Beck modules, torsors and Kähler differentials.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kahler", parents=[common], help="present Omega of an algebra")
    p.add_argument("--algebra", required=True)
    p.set_defaults(func=cmd_kahler)

    p = sub.add_parser("unramified", parents=[common], help="decide formal unramifiedness")
    p.add_argument("--algebra", required=True)
    p.add_argument("--witness", action="store_true", help="construct two distinct lifts when Omega != 0")
    p.set_defaults(func=cmd_unramified)

    torsor = sub.add_parser("torsor", help="torsor commands").add_subparsers(dest="action", required=True)
    p = torsor.add_parser("verify", parents=[common], help="verify a surjection is a Beck torsor")
    p.add_argument("--surjection", required=True)
    p.set_defaults(func=cmd_torsor_verify)

    lift = sub.add_parser("lift", help="lifting commands").add_subparsers(dest="action", required=True)
    p = lift.add_parser("check", parents=[common], help="injectivity of Hom(B, Z) -> Hom(B, Y)")
    p.add_argument("--domain", required=True)
    p.add_argument("--torsor", required=True)
    p.set_defaults(func=cmd_lift_check)

    p = sub.add_parser("pullback", parents=[common], help="pull a Beck module back along a hom")
    p.add_argument("--hom", required=True)
    p.add_argument("--module", required=True)
    p.set_defaults(func=cmd_pullback)

    groups = sub.add_parser("groups", help="group commands").add_subparsers(dest="action", required=True)
    p = groups.add_parser("unramified", parents=[common], help="lift checks over fixture groups")
    p.add_argument("--max-order", type=int, required=True)
    p.set_defaults(func=cmd_groups_unramified)

    corp = sub.add_parser("corpus", help="corpus commands").add_subparsers(dest="action", required=True)
    p = corp.add_parser("run", parents=[common], help="run an acceptance suite")
    p.add_argument("--suite", choices=("rings", "groups"), required=True)
    p.add_argument("--max-size", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_corpus_run)
    return parser


def run_command(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    limits = Limits(max_degree=args.max_degree, max_terms=args.max_terms, max_homs=args.max_homs)
    try:
        with limits_scope(limits):
            report, text = args.func(args)
    except (InputError, ResourceLimit) as exc:
        stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2
    if any(c.verdict == ERROR and c.details.get("error") == "ResourceLimit" for c in report.cases):
        stderr.write("error: ResourceLimit in at least one case\n")
    if args.format == "json":
        stdout.write(dumps(report.to_json(args.timings)))
    elif text is not None:
        stdout.write("\n".join(text) + "\n")
    else:
        stdout.write(report.to_text(args.timings))
    return report.exit_code


def main(argv=None):
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
