from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, strategies as st

from a4witt.arith import REAL, TRIVIAL, BrauerClass, Place
from a4witt.errors import DegenerateParams, UndefinedSymbol
from a4witt.galois import classify_quartic, quartic_resolvent, rational_roots
from a4witt.generic import (CALIBRATED_SIGN, SymbolParams, ab_pair, c_parametrization, calibrate_criterion_sign,
                            criterion_class, cubic_disc_root, embeddable, obstruction_formula_class,
                            params_disc_root, prop1_disc_root, prop1_quartic, quartic_from_params,
                            random_symbol_params, random_uv, search_symbol_params, uv_from_symbols,
                            verify_change_of_variables, verify_disc_squares)
from a4witt.poly import MultiPoly, UniPoly, discriminant
from a4witt.reports import FAIL, PASS
from a4witt.suites import suite_rng

from conftest import rationals, to_sympy

TWO_REAL = BrauerClass.of(Place(2), REAL)
Us, Vs, Xs = sympy.symbols("U V X")


def sympy_prop1():
    return (Xs ** 4 - 4 * Xs ** 3 + (36 * Vs + 2 * Us ** 2) * Xs ** 2 + (4 * Us ** 2 - 8 * Us ** 2 * Vs) * Xs
            + 36 * Us ** 2 * Vs ** 2 + Us ** 4 - 4 * Us ** 2 * Vs)


# -- examples ----------------------------------------------------------------------------

def test_prop1_quartic_examples():
    assert prop1_quartic(1, 1).coeffs == [1, -4, 38, -4, 33]
    V = MultiPoly.var("V")
    f = prop1_quartic(0, V)
    assert f.degree == 4
    assert all(not (x - y) for x, y in zip(f.coeffs, [1, -4, 36 * V, 0, 0]))


def test_obstruction_examples():
    assert obstruction_formula_class(1, 1) == TWO_REAL
    assert obstruction_formula_class(Fraction(-12, 5), Fraction(-463, 162)) == TRIVIAL
    with pytest.raises(UndefinedSymbol):
        obstruction_formula_class(3, 7)


def test_c_parametrization_examples():
    assert c_parametrization(0, 0, 0) == (0, 0)
    assert c_parametrization(3, 0, 0) == (3, 1)


def test_quartic_from_params_examples():
    assert list(quartic_from_params(0, 0, 0, 0)) == [0, 0, 0, 0]
    assert list(quartic_from_params(0, 3, 0, 0)) == [0, -6, -8, -3]


def test_uv_from_symbols_examples():
    U, V, ab = uv_from_symbols(SymbolParams(1, 1, 1, 1, 1, sign=1))
    assert (ab.a, ab.b) == (9, 9) and (U, V) == (Fraction(-15, 4), Fraction(137, 81))
    U, V, ab = uv_from_symbols(SymbolParams(1, 1, 1, 1, 1, sign=-1))
    assert (ab.a, ab.b) == (-9, -9) and (U, V) == (Fraction(-12, 5), Fraction(-463, 162))
    for sign in (1, -1):
        with pytest.raises(DegenerateParams):
            uv_from_symbols(SymbolParams(1, 1, 1, 0, 1, sign=sign))


def test_embeddable_examples():
    ok, rep = embeddable(1, 1)
    assert not ok and rep["class"] == TWO_REAL
    ok, rep = embeddable(Fraction(-12, 5), Fraction(-463, 162))
    assert ok and rep["real_roots"] == 4
    with pytest.raises(UndefinedSymbol):
        embeddable(3, 1)


def test_sign_calibration_examples():
    with pytest.raises(ValueError):
        calibrate_criterion_sign([])
    ab = ab_pair(SymbolParams(1, 1, 1, 1, 1, sign=1))
    assert not criterion_class(ab.a, ab.b).is_trivial


def test_sign_calibration_on_small_parameters():
    rng = suite_rng(0xA4, "generic-sign")
    rep = calibrate_criterion_sign([random_symbol_params(rng, bound=10) for _ in range(100)])
    assert rep.selected == -1 == CALIBRATED_SIGN
    assert rep.rates[-1] == 1 and rep.rates[1] == 0
    assert rep.negativity_holds


# -- symbolic claims, with sympy as an independent check -----------------------------------------

def test_disc_square_roots_exist():
    reports = verify_disc_squares()
    assert [r.status for r in reports] == [PASS] * 3
    root = prop1_disc_root()
    assert sympy.expand(to_sympy(root) ** 2 - sympy.discriminant(sympy_prop1(), Xs)) == 0


def test_cubic_disc_root_against_sympy():
    c1, u, v = sympy.symbols("c1 u v")
    c2 = c1 ** 2 / 3 - sympy.Rational(27, 4) * u ** 2 - v ** 2 / 4
    c3 = c1 ** 3 / 27 - c1 * v ** 2 / 12 - sympy.Rational(27, 4) * u ** 3 - u * v ** 2 / 4 \
        - sympy.Rational(9, 4) * c1 * u ** 2
    disc = sympy.discriminant(Xs ** 3 + c1 * Xs ** 2 + c2 * Xs + c3, Xs)
    assert sympy.expand(to_sympy(cubic_disc_root()) ** 2 - disc) == 0
    assert params_disc_root()


def test_change_of_variables():
    rep = verify_change_of_variables()
    assert rep.passed
    assert rep.witness["residual_a1_u"] == []
    assert verify_change_of_variables(perturb=1).status == FAIL


def test_change_of_variables_spot_check_with_sympy():
    # a1 = 0, u = 1, U = V = 1 through the forward map, then made monic
    a1, u, U, V = 0, 1, 1, 1
    x = sympy.Symbol("x")
    c1 = sympy.Rational(3 * a1 * V - 18 * u * V + 6 * u, 4 * V)
    v = sympy.Rational(u * U, V)
    c2 = c1 ** 2 / 3 - sympy.Rational(27, 4) * u ** 2 - v ** 2 / 4
    c3 = c1 ** 3 / 27 - c1 * v ** 2 / 12 - sympy.Rational(27, 4) * u ** 3 - u * v ** 2 / 4 \
        - sympy.Rational(9, 4) * c1 * u ** 2
    a2 = c1 * a1 - 2 * c2
    a3 = c2 * a1 - 8 * c3
    a4 = c3 * a1 + c2 ** 2 - 4 * c1 * c3
    quartic = x ** 4 + a1 * x ** 3 + a2 * x ** 2 + a3 * x + a4
    image = quartic.subs(x, (-2 * u - V * a1 + 2 * Xs * u) / sympy.Integer(4 * V))
    monic = sympy.Poly(sympy.expand(image), Xs).monic()
    assert monic.all_coeffs() == [1, -4, 38, -4, 33]


# -- properties ------------------------------------------------------------------------------

nonzero = rationals(20, nonzero=True)


@given(rationals(20), rationals(20), rationals(20), nonzero, nonzero, st.sampled_from((1, -1)))
def test_uv_postconditions(A, B, C, D, E, sign):
    p = SymbolParams(A, B, C, D, E, sign)
    try:
        U, V, ab = uv_from_symbols(p)
    except DegenerateParams:
        return
    assert (U - 3) / (U + 3) == ab.a
    assert -2 * (U * U * V - 9 * V + 1 - U * U) == ab.b
    assert (ab.a < 0) == (sign < 0) and (ab.b < 0) == (sign < 0)


@given(rationals(50), rationals(50))
def test_specializations_have_square_disc(U, V):
    f = prop1_quartic(U, V)
    d = discriminant(f)
    root = prop1_disc_root()
    assert d == root.evaluate({"U": U, "V": V}) ** 2


def test_specializations_are_a4_when_resolvent_irreducible():
    rng = suite_rng(3, "generic-specializations")
    done = 0
    while done < 50:
        U, V = random_uv(rng)
        f = prop1_quartic(U, V)
        label, _ = classify_quartic(f)
        if label.is_reducible:
            continue
        done += 1
        assert label.name in ("A4", "V4")
        if not rational_roots(quartic_resolvent(f)):
            assert label.name == "A4"


def test_end_to_end_embeddable_and_totally_real():
    rng = suite_rng(5, "generic-e2e")
    for _ in range(30):
        U, V, _ = uv_from_symbols(random_symbol_params(rng))
        ok, rep = embeddable(U, V)
        assert ok
        if "real_roots" in rep:
            assert rep["real_roots"] == 4


def test_search_symbol_params_recovers_a_pair():
    p = search_symbol_params(-9, -9, sign=-1, bound=3)
    assert p is not None
    ab = ab_pair(p)
    assert (ab.a, ab.b) == (-9, -9)
    assert search_symbol_params(5, -3, sign=-1) is None
