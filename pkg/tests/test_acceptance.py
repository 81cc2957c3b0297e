"""Acceptance gate: the ten primary criteria, one PASS/FAIL line each."""

import random
import time
from fractions import Fraction

import pytest

from a4witt.arith import candidate_places, hilbert_symbol, symbol_class
from a4witt.galois import numeric_real_root_count, real_root_count
from a4witt.generic import cubic_disc_root, prop1_disc_root, verify_change_of_variables
from a4witt.poly import NOT_A_SQUARE, UniPoly, discriminant, divrem
from a4witt.resolvent import pencil_analysis, verify_prop2
from a4witt.suites import (end_to_end_suite, galois_corpus_suite, root_formula_suite, sign_suite,
                           specialization_suite, witt_calibration_suite)

SEED = 0xA4


@pytest.fixture
def criterion(capsys):
    """Run a check under a runtime limit and print its verdict line."""

    def run(number, title, check, limit=None):
        start = time.perf_counter()
        ok, detail = False, ""
        try:
            ok, detail = check()
        except Exception as exc:  # reported, then re-raised through the assert below
            detail = f"{type(exc).__name__}: {exc}"
        elapsed = time.perf_counter() - start
        if limit is not None and elapsed > limit:
            ok, detail = False, f"{detail}; took {elapsed:.1f}s > {limit}s"
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({elapsed:.2f}s) {detail}")
        assert ok, detail

    return run


def _statuses(reports):
    bad = [r.claim for r in reports if not r.passed]
    return not bad, f"failed: {bad}" if bad else f"{len(reports)} claims"


def test_criterion_01_symbolic_identities(criterion):
    criterion(1, "symbolic resolvent identities", lambda: _statuses(verify_prop2()), limit=30)


def test_criterion_02_pencil_modulus(criterion):
    def check():
        rep = pencil_analysis()
        return rep.disc_identity_holds, f"modulus {rep.modulus_used}, tried {rep.tried}"

    criterion(2, "pencil remainder proportional to Q", check)


def test_criterion_03_numeric_root_formula(criterion):
    def check():
        rep = root_formula_suite(SEED, 100, tol=1e-9)
        return rep.passed, f"max residual {rep.witness['max_relative_residual']}"

    criterion(3, "paired-root values are roots of Q", check, limit=10)


def test_criterion_04_square_discriminants(criterion):
    def check():
        a, b = prop1_disc_root(), cubic_disc_root()
        return a is not NOT_A_SQUARE and b is not NOT_A_SQUARE, f"root terms {len(a)}, {len(b)}"

    criterion(4, "discriminants are polynomial squares", check, limit=10)


def test_criterion_05_change_of_variables(criterion):
    def check():
        rep = verify_change_of_variables()
        return rep.passed, f"leading coefficient {rep.witness['leading_coefficient']}"

    criterion(5, "change of variables yields the generic quartic", check, limit=30)


def test_criterion_06_galois(criterion):
    def check():
        corpus = galois_corpus_suite()
        special = specialization_suite(SEED, 50)
        return corpus.passed and special.passed, f"specialization labels {special.witness['labels']}"

    criterion(6, "Galois corpus and specializations", check)


def test_criterion_07_witt_calibration(criterion):
    def check():
        rep = witt_calibration_suite(SEED, 100, bound=50)
        w = rep.witness
        if "error" in w:
            return False, w["error"]
        return rep.passed, f"{w['calibration']['selected']}, fresh {w['fresh_agreement']}"

    criterion(7, "Witt convention calibration", check, limit=60)


def test_criterion_08_sign_calibration(criterion):
    def check():
        rep = sign_suite(SEED, 100)
        c = rep.witness["calibration"]
        return rep.passed, f"sign {c['selected']}, rates {c['rates']}, negativity {c['negativity_holds']}"

    criterion(8, "criterion sign calibration", check)


def test_criterion_09_end_to_end(criterion):
    def check():
        rep = end_to_end_suite(SEED, 100)
        return rep.passed, f"irreducible checked {rep.witness['irreducible_checked']}/100"

    criterion(9, "parameters give embeddable, totally real quartics", check)


def _rand_q(rng, bound=10 ** 6):
    while True:
        q = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if q:
            return q


def test_criterion_10_infrastructure(criterion):
    def check():
        rng = random.Random(SEED)
        failures = {}

        def record(name, ok):
            failures.setdefault(name, 0)
            failures[name] += not ok

        for _ in range(100):
            a, b, c = _rand_q(rng), _rand_q(rng), _rand_q(rng)
            prod = 1
            for v in candidate_places(a, b):
                prod *= hilbert_symbol(a, b, v)
            record("reciprocity", prod == 1)
            places = set(candidate_places(a, b * c)) | set(candidate_places(a, b)) | set(candidate_places(a, c))
            record("bimultiplicativity", all(
                hilbert_symbol(a, b * c, v) == hilbert_symbol(a, b, v) * hilbert_symbol(a, c, v) for v in places))
            record("a,-a", all(hilbert_symbol(a, -a, v) == 1 for v in set(candidate_places(a, -a))))
            s, t = _rand_q(rng, 100), _rand_q(rng, 100)
            record("square stability", symbol_class(a * s * s, b * t * t) == symbol_class(a, b))

            f = UniPoly([_rand_q(rng, 30) for _ in range(rng.randint(1, 7))])
            g = UniPoly([_rand_q(rng, 30) for _ in range(rng.randint(1, 4))])
            q, r = divrem(f, g)
            record("divrem round trip", q * g + r == f and (not r or r.degree < g.degree))

            while True:
                quartic = [1] + [rng.randint(-20, 20) for _ in range(4)]
                if discriminant(UniPoly(quartic)) != 0:
                    break
            record("sturm vs numeric", real_root_count(quartic) == numeric_real_root_count(quartic))
        bad = {k: v for k, v in failures.items() if v}
        return not bad, f"100 samples x {len(failures)} properties, failures {bad}"

    criterion(10, "infrastructure properties", check)
