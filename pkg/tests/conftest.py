"""Shared oracles and hypothesis settings.

sympy is used only here and in the tests, as an independent reference.
"""

from fractions import Fraction

import sympy
from hypothesis import HealthCheck, settings, strategies as st

from a4witt.poly import MultiPoly, UniPoly

settings.register_profile(
    "seeded", derandomize=True, deadline=None, max_examples=100,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("seeded")

X = sympy.Symbol("X")


def to_sympy(p):
    """MultiPoly / UniPoly / number -> sympy expression via the text format."""
    if isinstance(p, UniPoly):
        p = p.to_multipoly()
    if isinstance(p, (int, Fraction)):
        return sympy.Rational(p.numerator, p.denominator)
    return sympy.sympify(str(p).replace("^", "**"))


def sympy_poly(coeffs, var=X):
    return sympy.Poly([sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) for c in coeffs], var)


def from_sympy_rational(r):
    r = sympy.Rational(r)
    return Fraction(int(r.p), int(r.q))


def rationals(bound=50, nonzero=False):
    q = st.builds(Fraction, st.integers(-bound, bound), st.integers(1, bound))
    return q.filter(bool) if nonzero else q


def int_quartics(bound=20):
    return st.lists(st.integers(-bound, bound), min_size=4, max_size=4).map(lambda a: [1] + a)


def small_multipolys(names=("U", "V"), max_terms=5, max_deg=3, bound=9):
    """Random sparse polynomials in ``names``."""
    term = st.tuples(st.integers(-bound, bound),
                     st.lists(st.integers(0, max_deg), min_size=len(names), max_size=len(names)))

    def build(terms):
        out = MultiPoly()
        for c, exps in terms:
            m = MultiPoly.const(c)
            for n, e in zip(names, exps):
                m = m * MultiPoly.var(n) ** e
            out = out + m
        return out

    return st.lists(term, max_size=max_terms).map(build)
