"""Command-line entry point: verification suites and single-shot queries.

Every command prints one JSON report on stdout; summaries go to stderr.
Exit codes: 0 verified/true, 1 failed/false, 2 input error.
"""

import argparse
import json
import sys
import time

from .arith import parse_rational
from .errors import (A4WittError, DegenerateForm, DegenerateParams, DegenerateResolvent, ParseError,
                     SingularInput, UndefinedSymbol)
from .galois import classify_quartic, real_root_count
from .generic import (CALIBRATED_SIGN, SymbolParams, calibrate_criterion_sign, embeddable,
                      obstruction_args, prop1_quartic, random_symbol_params, random_uv, uv_from_symbols)
from .poly import discriminant, parse_unipoly
from .reports import ERROR, FAIL, PASS, ClaimReport, identity_report, jsonable
from .resolvent import QuarticCoeffs, ResolventCubic, check_root_formula, to_c_coords
from .suites import DEFAULT_SEED, run_scope, suite_rng
from .traceform import CALIBRATED_CONVENTION, calibrate_convention, trace_form, witt_class

INPUT_ERRORS = (ParseError, SingularInput, DegenerateParams, UndefinedSymbol, DegenerateForm)
VALUE_FLAGS = ("--U", "--V", "--A", "--B", "--C", "--D", "--E", "--sign")


def _quartic(text):
    f = parse_unipoly(text)
    if f.degree != 4:
        raise ParseError(f"expected a quartic, got degree {f.degree}", text, 0)
    return f


def _rational(name, text):
    try:
        return parse_rational(text)
    except ParseError as exc:
        raise ParseError(f"--{name}: malformed rational", text, exc.position) from None


# -- commands ---------------------------------------------------------------------

def cmd_verify(args):
    claims = run_scope(args.scope, args.seed, args.samples)
    return {"scope": args.scope, "samples": args.samples}, None, claims


def cmd_resolvent(args):
    f = _quartic(args.quartic)
    P = QuarticCoeffs.from_unipoly(f)
    Q = ResolventCubic.of(P)
    result = {"a": list(P), "b": list(Q)}
    try:
        result["c"] = list(to_c_coords(P))
    except DegenerateResolvent:
        result["c"] = None
    dP = discriminant(P.poly())
    result["disc_P"] = dP
    claims = [identity_report("resolvent.disc_relation", discriminant(Q.poly()), dP * Q.b0 ** 2,
                              "disc(Q) = disc(P) * b0^2")]
    if dP:
        claims.append(check_root_formula(P))
    return {"quartic": args.quartic}, result, claims


def cmd_galois(args):
    f = _quartic(args.quartic)
    label, cert = classify_quartic(f)
    return {"quartic": args.quartic}, {"label": label, "certificate": cert}, []


def cmd_traceform(args):
    f = _quartic(args.quartic)
    G, D = trace_form(f)
    w = witt_class(D, CALIBRATED_CONVENTION)
    result = {"gram": [list(r) for r in G.entries], "diagonal": list(D.entries),
              "signature": D.signature,
              "witt": {"convention": str(CALIBRATED_CONVENTION), "ramified": w}}
    return {"quartic": args.quartic}, result, []


def cmd_specialize(args):
    U, V = _rational("U", args.U), _rational("V", args.V)
    f = prop1_quartic(U, V)
    disc = discriminant(f)
    result = {"quartic": list(f.coeffs), "disc": disc}
    if disc == 0:
        result["label"] = None
    else:
        label, cert = classify_quartic(f)
        result.update(label=label, certificate=cert)
        if not label.is_reducible:
            result["real_roots"] = real_root_count(f)
    a, b = obstruction_args(U, V)
    result["obstruction_args"] = [a, b]
    return {"U": U, "V": V}, result, []


def _embed_result(U, V):
    ok, rep = embeddable(U, V)
    result = {"embeddable": ok}
    result.update(rep)
    return ok, result


def cmd_embeddable(args):
    U, V = _rational("U", args.U), _rational("V", args.V)
    ok, result = _embed_result(U, V)
    return {"U": U, "V": V}, result, [ClaimReport("embeddable", PASS if ok else FAIL)]


def cmd_param(args):
    values = {n: _rational(n, getattr(args, n)) for n in "ABCDE"}
    sign = {"+": 1, "-": -1}[args.sign]
    p = SymbolParams(sign=sign, **values)
    U, V, ab = uv_from_symbols(p)
    ok, emb = _embed_result(U, V)
    result = {"a": ab.a, "b": ab.b, "U": U, "V": V}
    result.update({k: v for k, v in emb.items() if k not in ("U", "V")})
    inputs = dict(values, sign=args.sign)
    return inputs, result, [ClaimReport("embeddable", PASS if ok else FAIL)]


def cmd_calibrate(args):
    rng = suite_rng(args.seed, "calibrate")
    claims = []
    conv = calibrate_convention([random_uv(rng) for _ in range(args.samples)])
    claims.append(ClaimReport("calibrate.witt_convention",
                              PASS if conv.selected is CALIBRATED_CONVENTION else FAIL,
                              {"report": conv.to_json(), "frozen": str(CALIBRATED_CONVENTION)}))
    sign = calibrate_criterion_sign([random_symbol_params(rng) for _ in range(args.samples)])
    claims.append(ClaimReport("calibrate.criterion_sign",
                              PASS if sign.selected == CALIBRATED_SIGN else FAIL,
                              {"report": sign.to_json(), "frozen": "-" if CALIBRATED_SIGN < 0 else "+"}))
    result = {"convention": str(conv.selected), "sign": "-" if sign.selected < 0 else "+"}
    return {"samples": args.samples}, result, claims


# -- plumbing ---------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(prog="a4witt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def seeded(p):
        p.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
        p.add_argument("--samples", type=int, default=100)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("scope", choices=("prop2", "prop1", "criterion", "all"))
    seeded(p)
    p.set_defaults(func=cmd_verify)

    for name, func, helptext in (("resolvent", cmd_resolvent, "resolvent cubic of a quartic"),
                                 ("galois", cmd_galois, "Galois group of a quartic"),
                                 ("traceform", cmd_traceform, "trace form and its Witt class")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("quartic", help='"[1,0,0,8,12]" or "X^4 + 8*X + 12"')
        p.set_defaults(func=func)

    for name, func in (("specialize", cmd_specialize), ("embeddable", cmd_embeddable)):
        p = sub.add_parser(name, help=f"{name} the generic quartic at (U, V)")
        p.add_argument("--U", required=True)
        p.add_argument("--V", required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("param", help="(U, V) from the five symbol parameters")
    for n in "ABCDE":
        p.add_argument(f"--{n}", required=True)
    p.add_argument("--sign", choices=("+", "-"), default="-" if CALIBRATED_SIGN < 0 else "+")
    p.set_defaults(func=cmd_param)

    p = sub.add_parser("calibrate", help="rerun the Witt-convention and sign calibrations")
    seeded(p)
    p.set_defaults(func=cmd_calibrate)
    return parser


def _join_values(argv):
    """Glue ``--U -12/5`` into ``--U=-12/5`` so negative rationals are not read as flags."""
    out, i = [], 0
    while i < len(argv):
        if argv[i] in VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def exit_code(claims):
    return 1 if any(c.status in (FAIL, ERROR) for c in claims) else 0


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_values(argv))
    start = time.perf_counter()
    seed = getattr(args, "seed", None)
    try:
        inputs, result, claims = args.func(args)
    except INPUT_ERRORS as exc:
        print(f"a4witt {args.command}: {exc}", file=sys.stderr)
        return 2
    except A4WittError as exc:
        inputs, result = {}, None
        claims = [ClaimReport(args.command, ERROR, {"error": f"{type(exc).__name__}: {exc}"})]
    report = {"command": args.command, "inputs": jsonable(inputs)}
    if result is not None:
        report["result"] = jsonable(result)
    report["claims"] = [c.to_json() for c in claims]
    report["seed"] = jsonable(seed)
    report["elapsed_ms"] = f"{(time.perf_counter() - start) * 1000:.0f}"
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")
    for c in claims:
        print(f"{c.status.upper():7} {c.claim}", file=sys.stderr)
    if seed is not None:
        print(f"seed {seed}", file=sys.stderr)
    return exit_code(claims)


if __name__ == "__main__":
    sys.exit(main())
