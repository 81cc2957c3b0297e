"""Seeded verification suites shared by the command line and the acceptance tests."""

import random
from fractions import Fraction

from .arith import symbol_class
from .errors import NoConventionMatches, NoSignMatches, NumericDegenerate
from .galois import classify_quartic
from .generic import (CALIBRATED_SIGN, calibrate_criterion_sign, criterion_class, embeddable,
                      obstruction_formula_class, prop1_quartic, random_symbol_params, random_uv, uv_from_symbols,
                      verify_change_of_variables, verify_disc_squares)
from .poly import UniPoly, discriminant
from .reports import FAIL, PASS, ClaimReport
from .resolvent import QuarticCoeffs, verify_prop2, verify_root_formula
from .traceform import CALIBRATED_CONVENTION, calibrate_convention, trace_form, witt_class

DEFAULT_SEED = 0xA4

GALOIS_CORPUS = (
    ((1, 0, 0, 8, 12), "A4"),
    ((1, 1, 1, 1, 1), "C4"),
    ((1, 0, 0, 0, 1), "V4"),
    ((1, 0, 0, 0, -2), "D4"),
    ((1, 0, 0, 1, 1), "S4"),
)


def suite_rng(seed, name):
    """Independent deterministic stream per suite, so suites can run in any order."""
    return random.Random(f"{seed}:{name}")


def random_quartic(rng, bound=20):
    """Monic integer quartic with |ai| <= bound and nonzero discriminant."""
    while True:
        a = [rng.randint(-bound, bound) for _ in range(4)]
        if discriminant(UniPoly([1] + a)) != 0:
            return QuarticCoeffs(*map(Fraction, a))


def root_formula_suite(seed, samples, tol=1e-9):
    rng = suite_rng(seed, "root_formula")
    failures, skipped, worst = [], 0, 0.0
    done = 0
    while done < samples:
        P = random_quartic(rng)
        try:
            rep = verify_root_formula(P, tol)
        except NumericDegenerate:
            skipped += 1
            continue
        done += 1
        worst = max(worst, max(float(r) for r in rep.witness["relative_residuals"]))
        if not rep.passed:
            failures.append([str(x) for x in P])
    return ClaimReport("prop2.root_formula_numeric", FAIL if failures else PASS,
                       {"samples": samples, "resampled_degenerate": skipped,
                        "max_relative_residual": f"{worst:.3e}", "tolerance": f"{tol:g}",
                        "failures": failures[:5]},
                       "Q vanishes at the three paired-root values")


def galois_corpus_suite():
    results, ok = [], True
    for coeffs, expected in GALOIS_CORPUS:
        label, _ = classify_quartic(list(coeffs))
        results.append({"quartic": list(coeffs), "expected": expected, "got": str(label)})
        ok &= str(label) == expected
    return ClaimReport("galois.corpus", PASS if ok else FAIL, {"cases": results},
                       "classical quartics land in C4, V4, D4, A4, S4")


def specialization_suite(seed, samples, bound=50):
    """Irreducible nondegenerate specializations of the generic quartic are A4 or V4."""
    rng = suite_rng(seed, "specialization")
    counts, bad, reducible = {}, [], 0
    done = 0
    while done < samples:
        U, V = random_uv(rng, bound)
        label, _ = classify_quartic(prop1_quartic(U, V))
        if label.is_reducible:
            reducible += 1
            continue
        done += 1
        counts[str(label)] = counts.get(str(label), 0) + 1
        if label.name not in ("A4", "V4"):
            bad.append({"U": U, "V": V, "label": str(label)})
    return ClaimReport("prop1.specializations", FAIL if bad else PASS,
                       {"samples": samples, "labels": counts, "reducible_skipped": reducible,
                        "violations": bad[:5]},
                       "specializations have Galois group inside A4")


def witt_calibration_suite(seed, samples, bound=50):
    """Calibrate the Witt convention, then confirm it on fresh samples."""
    rng = suite_rng(seed, "witt")
    calib = [random_uv(rng, bound) for _ in range(samples)]
    fresh = [random_uv(rng, bound) for _ in range(samples)]
    try:
        rep = calibrate_convention(calib)
    except NoConventionMatches as exc:
        return ClaimReport("traceform.witt_calibration", FAIL, {"error": str(exc)})
    misses = []
    for U, V in fresh:
        got = witt_class(trace_form(prop1_quartic(U, V))[1], rep.selected)
        if got != obstruction_formula_class(U, V):
            misses.append({"U": U, "V": V, "got": got})
    ok = not misses and rep.selected is CALIBRATED_CONVENTION
    return ClaimReport("traceform.witt_calibration", PASS if ok else FAIL,
                       {"calibration": rep.to_json(), "fresh_samples": len(fresh),
                        "fresh_agreement": f"{len(fresh) - len(misses)}/{len(fresh)}",
                        "frozen": str(CALIBRATED_CONVENTION), "misses": misses[:5]},
                       "trace-form Witt class equals the closed-form obstruction")


def sign_suite(seed, samples, bound=10):
    rng = suite_rng(seed, "sign")
    params = [random_symbol_params(rng, bound) for _ in range(samples)]
    try:
        rep = calibrate_criterion_sign(params)
    except NoSignMatches as exc:
        return ClaimReport("criterion.sign_calibration", FAIL, {"error": str(exc)})
    # a = b = 9 is positive, so (a, b) is trivial and (-1,-1) survives
    example = criterion_class(9, 9)
    ok = (rep.selected == CALIBRATED_SIGN and rep.rates[-rep.selected] < 1
          and not example.is_trivial and rep.negativity_holds)
    return ClaimReport("criterion.sign_calibration", PASS if ok else FAIL,
                       {"calibration": rep.to_json(), "a=b=9": example,
                        "symbol(9,9)": symbol_class(9, 9)},
                       "(-1,-1) + (a, b) vanishes for the symbol family")


def end_to_end_suite(seed, samples, bound=20):
    """Parameters -> (U, V) -> embeddable, totally real whenever irreducible."""
    rng = suite_rng(seed, "end_to_end")
    not_embeddable, not_real, checked = [], [], 0
    for _ in range(samples):
        p = random_symbol_params(rng, bound, CALIBRATED_SIGN)
        U, V, _ = uv_from_symbols(p)
        ok, rep = embeddable(U, V)
        if not ok:
            not_embeddable.append({"U": U, "V": V, "class": rep["class"]})
        if "real_roots" in rep:
            checked += 1
            if rep["real_roots"] != 4:
                not_real.append({"U": U, "V": V, "real_roots": rep["real_roots"]})
    ok = not not_embeddable and not not_real
    return ClaimReport("criterion.end_to_end", PASS if ok else FAIL,
                       {"samples": samples, "irreducible_checked": checked,
                        "not_embeddable": not_embeddable[:5], "not_totally_real": not_real[:5]},
                       "symbol parameters give embeddable, totally real quartics")


def run_scope(scope, seed=DEFAULT_SEED, samples=100):
    claims = []
    if scope in ("prop2", "all"):
        claims += verify_prop2()
        claims.append(root_formula_suite(seed, samples))
    if scope in ("prop1", "all"):
        claims += verify_disc_squares()
        claims.append(verify_change_of_variables())
        claims.append(galois_corpus_suite())
        claims.append(specialization_suite(seed, samples))
        claims.append(witt_calibration_suite(seed, samples))
    if scope in ("criterion", "all"):
        claims.append(sign_suite(seed, samples))
        claims.append(end_to_end_suite(seed, samples))
    return claims

