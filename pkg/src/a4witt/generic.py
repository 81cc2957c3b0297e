"""The generic A4 quartic in parameters (U, V) and the Ã4 embedding obstruction.

The family is

    X^4 - 4X^3 + (36V + 2U^2) X^2 + (4U^2 - 8U^2 V) X + 36U^2V^2 + U^4 - 4U^2 V,

whose trace-form obstruction to lifting A4 to its double cover is the class
(-1,-1) + (U^2 - 9, -2(U^2 V - 9V + 1 - U^2)).  Writing that class as
(-1,-1) + (a, b) with a, b given by sums of three squares yields (U, V) from
five free parameters A..E.
"""

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .arith import class_add, rational_sqrt, symbol_class
from .errors import DegenerateParams, NotDivisible, NoSignMatches, SingularInput, UndefinedSymbol
from .galois import classify_quartic, real_root_count
from .poly import MultiPoly, RatFunc, UniPoly, discriminant, poly_square_root, substitute
from .reports import FAIL, PASS, ClaimReport
from .resolvent import QuarticCoeffs, from_c_coords


# Overall sign of (a, b) selected by calibrate_criterion_sign.
CALIBRATED_SIGN = -1


def prop1_quartic(U, V):
    """The generic A4 quartic at (U, V); U, V may be rationals or MultiPoly."""
    U2 = U * U
    return UniPoly([1, -4, 36 * V + 2 * U2, 4 * U2 - 8 * U2 * V,
                    36 * U2 * V * V + U2 * U2 - 4 * U2 * V], "X")


def obstruction_args(U, V):
    U, V = Fraction(U), Fraction(V)
    return U * U - 9, -2 * (U * U * V - 9 * V + 1 - U * U)


def obstruction_formula_class(U, V):
    a, b = obstruction_args(U, V)
    if a == 0:
        raise UndefinedSymbol("U^2 = 9")
    if b == 0:
        raise UndefinedSymbol("U^2 V - 9V + 1 - U^2 = 0")
    return class_add(symbol_class(-1, -1), symbol_class(a, b))


def c_parametrization(c1, u, v):
    """(c2, c3) making X^3 + c1 X^2 + c2 X + c3 have square discriminant."""
    c2 = c1 * c1 * Fraction(1, 3) - u * u * Fraction(27, 4) - v * v * Fraction(1, 4)
    c3 = (c1 ** 3 * Fraction(1, 27) - c1 * v * v * Fraction(1, 12) - u ** 3 * Fraction(27, 4)
          - u * v * v * Fraction(1, 4) - c1 * u * u * Fraction(9, 4))
    return c2, c3


def quartic_from_params(a1, c1, u, v):
    c2, c3 = c_parametrization(c1, u, v)
    return from_c_coords((a1, c1, c2, c3))


# -- symbolic checks ------------------------------------------------------------

def _symbols(*names):
    return [MultiPoly.var(n) for n in names]


def prop1_disc_root():
    """Exact square root of disc(prop1_quartic(U, V)) in Q[U, V], or NOT_A_SQUARE."""
    U, V = _symbols("U", "V")
    return poly_square_root(discriminant(prop1_quartic(U, V)))


def cubic_disc_root():
    c1, u, v = _symbols("c1", "u", "v")
    c2, c3 = c_parametrization(c1, u, v)
    return poly_square_root(discriminant(UniPoly([1, c1, c2, c3], "X")))


def params_disc_root():
    a1, c1, u, v = _symbols("a1", "c1", "u", "v")
    return poly_square_root(discriminant(quartic_from_params(a1, c1, u, v).poly()))


def verify_disc_squares():
    out = []
    for claim, fn, anchor in (
            ("prop1.disc_square", prop1_disc_root, "disc of the generic quartic is a square in Q[U,V]"),
            ("prop1.cubic_disc_square", cubic_disc_root, "c-parametrized cubics have square discriminant"),
            ("prop1.params_disc_square", params_disc_root, "quartics from (a1, c1, u, v) have square discriminant")):
        root = fn()
        out.append(ClaimReport(claim, PASS if root else FAIL,
                               {"sqrt_terms": len(root)} if root else {}, anchor))
    return out


def forward_map(perturb=0):
    """(c1, v, x) as rational functions of (a1, u, U, V, X); ``perturb`` shifts x's constant."""
    a1, u, U, V, X = _symbols("a1", "u", "U", "V", "X")
    c1 = RatFunc(3 * a1 * V - 18 * u * V + 6 * u, 4 * V)
    v = RatFunc(u * U, V)
    x = RatFunc(-2 * u - V * a1 + 2 * X * u + perturb, 4 * V)
    return c1, v, x


def inverse_map():
    """(U, V, X) as rational functions of (a1, u, c1, v, x)."""
    a1, u, c1, v, x = _symbols("a1", "u", "c1", "v", "x")
    den = -18 * u - 4 * c1 + 3 * a1
    return RatFunc(-6 * v, den), RatFunc(-6 * u, den), RatFunc(-2 * (6 * x + 9 * u + 2 * c1), den)


def verify_change_of_variables(perturb=0):
    """Substituting the forward map into quartic_from_params gives the generic quartic.

    The result is cleared of denominators and made monic in X; it must equal
    prop1_quartic(U, V) identically, so every trace of a1 and u cancels. The
    inverse map must undo the forward map.
    """
    a1, c1, u, v, x = _symbols("a1", "c1", "u", "v", "x")
    quartic = quartic_from_params(a1, c1, u, v).poly("x").to_multipoly()
    fc1, fv, fx = forward_map(perturb)
    image = substitute(quartic, {"c1": fc1, "v": fv, "x": fx})
    num = RatFunc.coerce(image).num
    lead = num.coefficients_in("X").get(4, MultiPoly())
    U, V = _symbols("U", "V")
    target = prop1_quartic(U, V).to_multipoly()
    try:
        monic = num.exact_div(lead) if lead else None
    except NotDivisible:
        monic = None
    matches = monic is not None and monic == target
    leftover = sorted(set(monic.variables()) & {"a1", "u"}) if monic is not None else None

    inv_U, inv_V, inv_X = inverse_map()
    bindings = {"c1": fc1, "v": fv, "x": fx}
    U_, V_, X_ = _symbols("U", "V", "X")
    roundtrip = all(substitute(f, bindings) == g for f, g in ((inv_U, U_), (inv_V, V_), (inv_X, X_)))

    witness = {"leading_coefficient": str(lead), "residual_a1_u": leftover, "inverse_roundtrip": roundtrip}
    if not matches:
        witness["numerator_terms"] = len(num)
    ok = matches and roundtrip and not leftover
    return ClaimReport("prop1.change_of_variables", PASS if ok else FAIL, witness,
                       "the birational substitution produces the generic quartic")


# -- five-parameter family ----------------------------------------------------------

@dataclass(frozen=True)
class SymbolParams:
    A: Fraction
    B: Fraction
    C: Fraction
    D: Fraction
    E: Fraction
    sign: int = -1

    def __post_init__(self):
        for name in "ABCDE":
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")


@dataclass(frozen=True)
class ABPair:
    a: Fraction
    b: Fraction


def three_square_norms(A, B, C):
    """The sums of three squares 1+A^2+A^2B^2, 1+B^2+B^2C^2, 1+C^2+C^2A^2."""
    return (1 + A * A + A * A * B * B, 1 + B * B + B * B * C * C, 1 + C * C + C * C * A * A)


def ab_pair(p):
    if p.D == 0:
        raise DegenerateParams("D = 0")
    if p.E == 0:
        raise DegenerateParams("E = 0")
    n1, n2, n3 = three_square_norms(p.A, p.B, p.C)
    return ABPair(p.sign * p.D * p.D * n1 * n2, p.sign * p.E * p.E * n2 * n3)


def uv_from_symbols(p):
    """(U, V, ABPair) with (U-3)/(U+3) = a and -2(U^2 V - 9V + 1 - U^2) = b."""
    ab = ab_pair(p)
    a, b = ab.a, ab.b
    if a == 1:
        raise DegenerateParams("a = 1")
    U = 3 * (1 + a) / (1 - a)
    if U * U == 9:
        raise DegenerateParams("U^2 = 9")
    V = (U * U - 1 - b / 2) / (U * U - 9)
    if (U - 3) / (U + 3) != a or -2 * (U * U * V - 9 * V + 1 - U * U) != b:
        raise AssertionError("(U, V) does not reproduce (a, b)")
    return U, V, ab


def embeddable(U, V):
    """Whether the A4 extension of the quartic at (U, V) lifts to Ã4 = SL2(F3)."""
    U, V = Fraction(U), Fraction(V)
    cls = obstruction_formula_class(U, V)
    report = {"U": U, "V": V, "class": cls}
    f = prop1_quartic(U, V)
    disc = discriminant(f)
    report["disc"] = disc
    if disc != 0:
        label, _ = classify_quartic(f)
        report["label"] = label
        if not label.is_reducible:
            report["real_roots"] = real_root_count(f)
    return cls.is_trivial, report


def criterion_class(a, b):
    return class_add(symbol_class(-1, -1), symbol_class(a, b))


@dataclass
class SignReport:
    selected: int
    rates: dict
    nontrivial_examples: dict
    negativity_holds: bool
    samples: int

    def to_json(self):
        return {"selected": "+" if self.selected > 0 else "-", "samples": self.samples,
                "rates": {("+" if s > 0 else "-"): str(r) for s, r in self.rates.items()},
                "nontrivial_examples": {("+" if s > 0 else "-"): v for s, v in self.nontrivial_examples.items()},
                "negativity_holds": self.negativity_holds}


def calibrate_criterion_sign(samples):
    """Which overall sign of (a, b) makes (-1,-1) + (a, b) vanish for every sample."""
    samples = list(samples)
    if not samples:
        raise ValueError("sign calibration needs at least one sample")
    rates, examples = {}, {}
    negativity = True
    for sign in (1, -1):
        trivial = 0
        for p in samples:
            ab = ab_pair(SymbolParams(p.A, p.B, p.C, p.D, p.E, sign))
            if criterion_class(ab.a, ab.b).is_trivial:
                trivial += 1
                negativity &= ab.a < 0 and ab.b < 0
            elif sign not in examples:
                examples[sign] = {"a": str(ab.a), "b": str(ab.b)}
        rates[sign] = Fraction(trivial, len(samples))
    winners = [s for s, r in rates.items() if r == 1]
    if not winners:
        raise NoSignMatches(f"no sign makes the criterion hold on all samples: {rates}")
    return SignReport(winners[0], rates, examples, negativity, len(samples))


def search_symbol_params(a, b, sign=-1, bound=30, budget=200_000):
    """Best-effort search for A..E (heights <= bound) producing the pair (a, b).

    Only small rationals A, B, C are tried, in order of increasing height,
    and the search stops after ``budget`` triples. Returns None on failure.
    """
    a, b = Fraction(a) * sign, Fraction(b) * sign
    if a <= 0 or b <= 0:
        return None
    values = sorted({Fraction(n, d) for d in range(1, bound + 1) for n in range(0, bound + 1)},
                    key=lambda q: (max(q.numerator, q.denominator), q))
    tried = 0
    for A, B, C in itertools.product(values, repeat=3):
        tried += 1
        if tried > budget:
            return None
        n1, n2, n3 = three_square_norms(A, B, C)
        D = rational_sqrt(a / (n1 * n2))
        if D is None:
            continue
        E = rational_sqrt(b / (n2 * n3))
        if E is not None:
            return SymbolParams(A, B, C, D, E, sign)
    return None


# -- sampling ------------------------------------------------------------------

def random_rational(rng, bound, nonzero=False):
    while True:
        n = rng.randint(-bound, bound)
        d = rng.randint(1, bound)
        if n or not nonzero:
            return Fraction(n, d)


def random_symbol_params(rng, bound=20, sign=-1):
    """Nondegenerate SymbolParams with numerators/denominators in [-bound, bound]."""
    while True:
        p = SymbolParams(*(random_rational(rng, bound, nonzero=(k >= 3)) for k in range(5)), sign)
        try:
            uv_from_symbols(p)
        except DegenerateParams:
            continue
        return p


def random_uv(rng, bound=50):
    """(U, V) away from the degenerate loci: obstruction defined and disc != 0."""
    while True:
        U, V = random_rational(rng, bound), random_rational(rng, bound)
        a, b = obstruction_args(U, V)
        if a == 0 or b == 0:
            continue
        if discriminant(prop1_quartic(U, V)) == 0:
            continue
        return U, V


def make_rng(seed):
    return random.Random(seed)


def prop1_quartic_coeffs(U, V):
    return QuarticCoeffs.from_unipoly(prop1_quartic(U, V))


def classify_specialization(U, V):
    f = prop1_quartic(U, V)
    if discriminant(f) == 0:
        raise SingularInput("specialization has zero discriminant")
    return classify_quartic(f)

