from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, strategies as st

from a4witt.arith import BrauerClass, Place, REAL, TRIVIAL, squarefree_part, symbol_class
from a4witt.errors import DegenerateForm, NoConventionMatches
from a4witt.galois import real_root_count
from a4witt.generic import obstruction_formula_class, prop1_quartic, random_uv
from a4witt.poly import UniPoly, discriminant
from a4witt.traceform import (CALIBRATED_CONVENTION, DiagonalForm, GramMatrix, WittConvention,
                              calibrate_convention, diagonalize, gram_matrix, power_sums, trace_form,
                              witt_class)
from a4witt.suites import suite_rng

from conftest import int_quartics, rationals

TWO_REAL = BrauerClass.of(Place(2), REAL)


def companion_gram(coeffs):
    """Tr(x^(i+j)) from traces of powers of the companion matrix."""
    n = len(coeffs) - 1
    C = sympy.zeros(n, n)
    for i in range(1, n):
        C[i, i - 1] = 1
    for i in range(n):
        C[i, n - 1] = -sympy.Rational(coeffs[n - i]) / coeffs[0]
    traces = [(C ** k).trace() for k in range(2 * n - 1)]
    return [[Fraction(int(traces[i + j].p), int(traces[i + j].q)) for j in range(n)] for i in range(n)]


# -- examples ------------------------------------------------------------------------------

def test_power_sums_examples():
    assert power_sums([1, 0, 0, 0, -2], 6) == [4, 0, 0, 0, 8, 0, 0]
    p = power_sums([1, 0, 0, 8, 12], 6)
    assert (p[3], p[4], p[6]) == (-24, -48, 192)
    assert power_sums([1, 0, 0, 0, 0], 6)[1:] == [0] * 6


def test_gram_examples():
    assert gram_matrix([1, 0, 0, 0, -2]).rows() == [[4, 0, 0, 0], [0, 0, 0, 8], [0, 0, 8, 0], [0, 8, 0, 0]]
    assert gram_matrix([1, 0, 0, 8, 12]).rows() == [[4, 0, 0, -24], [0, 0, -24, -48], [0, -24, -48, 0],
                                                    [-24, -48, 0, 192]]


def test_diagonalize_examples():
    assert diagonalize([[4, 0, 0, 0], [0, 9, 0, 0], [0, 0, 1, 0], [0, 0, 0, 25]]).entries == (1, 1, 1, 1)
    assert diagonalize(gram_matrix([1, 0, 0, 0, -2])).signature == 2
    with pytest.raises(DegenerateForm):
        diagonalize([[1, 1], [1, 1]])


def test_diagonalize_zero_diagonal_uses_add_row():
    d = diagonalize([[0, 1], [1, 0]])
    assert d.signature == 0
    assert squarefree_part(d.entries[0] * d.entries[1]) == -1


def test_witt_class_examples():
    ones = DiagonalForm((1, 1, 1, 1))
    assert witt_class(ones, WittConvention.HASSE) == TRIVIAL
    assert witt_class(ones, WittConvention.HASSE_PLUS_MINUSONE) == TWO_REAL
    assert witt_class(DiagonalForm((-1, -1, -1, -1)), WittConvention.HASSE) == TRIVIAL


def test_calibration_rejects_empty_input():
    with pytest.raises(ValueError):
        calibrate_convention([])


def test_calibration_fails_when_nothing_matches(monkeypatch):
    import a4witt.generic as generic

    real = generic.obstruction_formula_class
    monkeypatch.setattr(generic, "obstruction_formula_class",
                        lambda U, V: real(U, V) + symbol_class(2, 3))
    with pytest.raises(NoConventionMatches):
        calibrate_convention([(Fraction(1), Fraction(1)), (Fraction(-12, 5), Fraction(-463, 162))])


def test_calibration_refuses_ambiguous_result(monkeypatch):
    import a4witt.traceform as tf

    real = tf.witt_class
    monkeypatch.setattr(tf, "witt_class", lambda form, conv=None: real(form, WittConvention.HASSE))
    with pytest.raises(NoConventionMatches, match="ambiguous"):
        calibrate_convention([(Fraction(1), Fraction(1))])


def test_calibration_selects_hasse():
    rng = suite_rng(0xA4, "traceform-test")
    rep = calibrate_convention([random_uv(rng) for _ in range(100)])
    assert rep.selected is WittConvention.HASSE is CALIBRATED_CONVENTION
    assert rep.agreement[WittConvention.HASSE] == 100
    assert rep.agreement[WittConvention.HASSE_PLUS_MINUSONE] < 100


# -- oracles and properties ---------------------------------------------------------------------

@given(int_quartics(15))
def test_gram_against_companion_traces(c):
    assert gram_matrix(c).rows() == companion_gram(c)


@given(int_quartics(15))
def test_determinant_is_disc_up_to_squares(c):
    disc = discriminant(UniPoly(c))
    assume(disc != 0)
    G, D = trace_form(c)
    assert G.determinant() == disc  # exactly, for monic P
    assert D.discriminant_class() == squarefree_part(disc)


@given(int_quartics(15))
def test_signature_is_real_root_count(c):
    assume(discriminant(UniPoly(c)) != 0)
    _, D = trace_form(c)
    assert D.signature == real_root_count(c)


@given(st.lists(st.integers(-30, 30).filter(bool), min_size=4, max_size=4),
       st.integers(0, 3), rationals(20, nonzero=True))
def test_witt_class_square_invariance(d, i, s):
    scaled = list(d)
    scaled[i] = squarefree_part(scaled[i] * s * s)
    for conv in WittConvention:
        assert witt_class(DiagonalForm(tuple(map(squarefree_part, d))), conv) == \
            witt_class(DiagonalForm(tuple(scaled)), conv)


@given(st.lists(st.integers(-30, 30).filter(bool), min_size=4, max_size=4))
def test_hasse_class_is_pairwise_symbol_sum(d):
    expected = TRIVIAL
    for i in range(4):
        for j in range(i + 1, 4):
            expected = expected + symbol_class(d[i], d[j])
    assert witt_class(DiagonalForm(tuple(map(squarefree_part, d))), WittConvention.HASSE) == expected


def test_witt_class_matches_formula_on_fresh_samples():
    rng = suite_rng(7, "traceform-fresh")
    for _ in range(100):
        U, V = random_uv(rng)
        got = witt_class(trace_form(prop1_quartic(U, V))[1], CALIBRATED_CONVENTION)
        assert got == obstruction_formula_class(U, V), (U, V)
