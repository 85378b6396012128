"""Command-line front end.  Structured output goes to stdout, diagnostics to stderr.

Exit codes: 0 success / verified, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from fractions import Fraction

from .braid import BraidError, BraidWord, closure_components, exponent_sum, parse_word, permutation, word_to_json
from .certified import UncertifiedError
from .garside import normal_form

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _rat(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=1) + "\n")


def _csv_writer():
    return csv.writer(sys.stdout, lineterminator="\n")


def _word_arg(text: str, strands: int) -> BraidWord:
    try:
        return parse_word(text, strands)
    except BraidError as exc:
        raise UsageError(str(exc)) from exc


# -- commands -------------------------------------------------------------------------------


def cmd_nf(args) -> int:
    w = _word_arg(args.word, args.strands)
    nf = normal_form(w)
    _emit_json({
        "strands": w.strands,
        "word": word_to_json(w),
        "normal_form": nf.to_json(),
        "canonical": word_to_json(nf.to_word()),
        "trivial": nf.infimum == 0 and not nf.factors,
        "permutation": list(permutation(w)),
        "components": closure_components(w),
        "exponent_sum": exponent_sum(w),
    })
    return EXIT_OK


def cmd_invariants(args) -> int:
    from .seifert import OnJumpError, alexander_poly, lt_signature, seifert_matrix, signature_arcs, sigma_hat

    w = _word_arg(args.word, args.strands)
    try:
        v = seifert_matrix(w)
    except BraidError as exc:
        raise UsageError(str(exc)) from exc
    sign = -1 if args.paper_sign else 1
    knot = closure_components(w) == 1
    if args.profile:
        if not knot:
            raise UsageError("signature profile needs a knot")
        out = _csv_writer()
        out.writerow(["s_lo", "s_hi", "sigma"])
        for arc in signature_arcs(w, v):
            out.writerow([repr(arc.s_lo), repr(arc.s_hi), sign * arc.sigma])
        return EXIT_OK
    report = {
        "strands": w.strands,
        "word": word_to_json(w),
        "components": closure_components(w),
        "seifert_matrix": v.to_json(),
        "paper_sign": bool(args.paper_sign),
    }
    if knot:
        delta = alexander_poly(v)
        report["alexander"] = {"low": delta.low, "coeffs": list(delta.coeffs), "text": str(delta)}
        report["signature"] = sign * lt_signature(v, Fraction(1, 2)).sigma
        report["sigma_hat"] = sigma_hat(w)
    samples = []
    for s_text in args.s or []:
        try:
            s = Fraction(s_text)
        except ValueError as exc:
            raise UsageError(f"bad sample point {s_text!r}") from exc
        try:
            val = lt_signature(v, s, paper_sign=args.paper_sign)
            samples.append({"s": _rat(s), "sigma": val.sigma, "certified": val.certified})
        except OnJumpError as exc:
            samples.append({"s": _rat(s), "error": "on-jump", "detail": str(exc)})
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    if samples:
        report["lt_signatures"] = samples
    _emit_json(report)
    return EXIT_OK


def _claimed_t_bound(p: int, q: int) -> int | None:
    """Upper bound on t(T(p,q)) certified by the generated scripts (closed forms)."""
    from .families import t3_cost

    if p == 2:
        return (q - 1) // 2
    if p == 3:
        return t3_cost(q)
    if p == 4:
        eps = ((q + 5) % 12) - 5
        return q if eps in (1, 3) or q == 5 else q + 1
    if p == 6:
        k = (q + 1) // 6
        return 9 * k + 2 if q % 6 == 1 else 9 * k
    return None


def cmd_torus(args) -> int:
    from .torus import genus_torus, sigma_hat_torus, sigma_torus, torus, torus_jumps

    if args.table is not None:
        p, nmax = args.table
        out = _csv_writer()
        out.writerow(["p", "q", "sigma", "sigma_hat", "genus", "two_gt_upper"])
        for q in range(max(2, p + 1), nmax + 1):
            if math.gcd(p, q) != 1:
                continue
            t = torus(p, q)
            bound = _claimed_t_bound(p, q)
            out.writerow([p, q, sigma_torus(t), sigma_hat_torus(t), genus_torus(t), "" if bound is None else 2 * bound])
        return EXIT_OK
    if args.p is None or args.q is None:
        raise UsageError("torus needs P Q, or --table P NMAX")
    try:
        t = torus(args.p, args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    prof = torus_jumps(t)
    if args.jumps:
        out = _csv_writer()
        out.writerow(["j", "x_num", "x_den", "a", "b", "delta", "cumulative"])
        for jp, cum in zip(prof.jumps, prof.cumulative):
            out.writerow([jp.j, jp.x.numerator, jp.x.denominator, jp.a, jp.b, jp.delta, cum])
        return EXIT_OK
    bound = _claimed_t_bound(t.p, t.q)
    _emit_json({
        "p": t.p,
        "q": t.q,
        "sigma": sigma_torus(t),
        "sigma_hat": sigma_hat_torus(t),
        "genus": genus_torus(t),
        "jumps": len(prof.jumps),
        "t_upper_bound": bound,
    })
    return EXIT_OK


def cmd_verify(args) -> int:
    from .moves import MoveScript, ScriptError, verify_script

    try:
        with open(args.script, encoding="utf-8") as fh:
            script = MoveScript.loads(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {args.script}: {exc}") from exc
    except (ScriptError, BraidError) as exc:
        raise UsageError(f"malformed script: {exc}") from exc
    cert = verify_script(script, unknot_depth=args.depth)
    sys.stdout.write(cert.dumps())
    if not cert.verified:
        print(f"verification failed: {cert.failure}", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def cmd_family(args) -> int:
    from .families import FamilyError, family_script

    try:
        script = family_script(args.family, k=args.k, n=args.n)
    except FamilyError as exc:
        raise UsageError(str(exc)) from exc
    sys.stdout.write(script.dumps())
    return EXIT_OK


def cmd_asymptotics(args) -> int:
    from .families import FamilyError, asymptotic_table

    try:
        rows = asymptotic_table(args.kmax)
    except FamilyError as exc:
        raise UsageError(str(exc)) from exc
    out = _csv_writer()
    out.writerow(["k", "strands", "doubling_twists", "per_copy_bound", "total_bound", "genus", "ratio_num", "ratio_den"])
    for r in rows:
        out.writerow([r.k, r.strands, r.doubling_twists, r.t3_bound, r.total_bound, r.genus,
                      r.ratio.numerator, r.ratio.denominator])
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .acceptance import run_all

    results = run_all(echo=lambda line: print(line, flush=True))
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAILED


# -- parser ---------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="twistlab", description="Torus-knot signatures and untwisting certificates.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nf", help="Garside normal form, permutation and closure components of a word")
    p.add_argument("--strands", type=int, required=True)
    p.add_argument("word", help='braid word such as "abAB" (a = sigma_1, A = its inverse)')
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("invariants", help="Seifert matrix, Alexander polynomial and signatures of a closure")
    p.add_argument("--strands", type=int, required=True)
    p.add_argument("word")
    p.add_argument("--s", action="append", metavar="S", help="rational sample point in (0,1); repeatable")
    p.add_argument("--profile", action="store_true", help="print the signature profile as CSV (s_lo, s_hi, sigma)")
    p.add_argument("--paper-sign", action="store_true", help="report signed values with positive torus knots positive")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("torus", help="jump data, sigma, sigma_hat and genus of T(p,q)")
    p.add_argument("p", type=int, nargs="?")
    p.add_argument("q", type=int, nargs="?")
    p.add_argument("--table", type=int, nargs=2, metavar=("P", "NMAX"), help="CSV sweep over q <= NMAX")
    p.add_argument("--jumps", action="store_true", help="print the jump table as CSV")
    p.set_defaults(func=cmd_torus)

    p = sub.add_parser("verify", help="replay a move script and print its certificate")
    p.add_argument("script", help="path to a script JSON file")
    p.add_argument("--depth", type=int, default=8, help="unknot reducer search depth")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("family", help="generate the script of a family member")
    p.add_argument("--family", required=True,
                   help="T3_4, T3_7, T3_10, T3_13, T3_6k16, T3_6k19, T3_bridge_change, T3, T4_eps (T4), T6_split (T6), Doubling")
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("asymptotics", help="the doubling recursion table as CSV")
    p.add_argument("--kmax", type=int, required=True)
    p.set_defaults(func=cmd_asymptotics)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"twistlab {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UncertifiedError as exc:
        print(f"twistlab {args.command}: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
