"""The cubic resolvent Q = (P'^2 mod P) of a monic quartic and its identities.

Q has the roots (x1*x2 - x3*x4)/(x1 + x2 - x3 - x4) over the three pairings
of the roots of P. Everything here works over any coefficient ring the poly
module supports, so the same code checks numeric instances and generic
symbolic ones.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateResolvent, NoProportionality, NumericDegenerate, SingularInput
from .poly import MultiPoly, UniPoly, discriminant, ring_div, rem, simplify, substitute
from .reports import FAIL, PASS, SKIPPED, ClaimReport, identity_report


@dataclass(frozen=True)
class QuarticCoeffs:
    """Monic ``X^4 + a1*X^3 + a2*X^2 + a3*X + a4``."""

    a1: object
    a2: object
    a3: object
    a4: object

    @classmethod
    def generic(cls):
        return cls(*(MultiPoly.var(f"a{i}") for i in range(1, 5)))

    @classmethod
    def from_unipoly(cls, f):
        if f.degree != 4:
            raise ValueError(f"expected a quartic, got degree {f.degree}")
        m = f.monic()
        return cls(*m.coeffs[1:])

    def poly(self, var="X"):
        return UniPoly([1, self.a1, self.a2, self.a3, self.a4], var)

    def __iter__(self):
        return iter((self.a1, self.a2, self.a3, self.a4))


@dataclass(frozen=True)
class ResolventCubic:
    """``b0*X^3 + b1*X^2 + b2*X + b3``."""

    b0: object
    b1: object
    b2: object
    b3: object

    @classmethod
    def of(cls, quartic):
        """Remainder of P'^2 by P, cross-checked against the closed formulas."""
        q = resolvent_from_division(quartic)
        if q != resolvent_from_formulas(quartic):
            raise AssertionError("division remainder disagrees with the closed formulas")
        return q

    def poly(self, var="X"):
        return UniPoly([self.b0, self.b1, self.b2, self.b3], var)

    def __iter__(self):
        return iter((self.b0, self.b1, self.b2, self.b3))

    def __eq__(self, other):
        if not isinstance(other, ResolventCubic):
            return NotImplemented
        return all(not (x - y) for x, y in zip(self, other))

    __hash__ = None


@dataclass(frozen=True)
class CCoords:
    """(a1, c1, c2, c3) with ``ci = bi / b0``."""

    a1: object
    c1: object
    c2: object
    c3: object

    def __iter__(self):
        return iter((self.a1, self.c1, self.c2, self.c3))


@dataclass
class PencilReport:
    U_of_T: object
    modulus_used: str
    disc_identity_holds: bool
    tried: dict

    def to_json(self):
        return {"U_of_T": str(self.U_of_T), "modulus_used": self.modulus_used,
                "disc_identity_holds": self.disc_identity_holds, "tried": self.tried}


def resolvent_from_division(quartic):
    p = quartic.poly()
    r = rem(p.derivative() ** 2, p)
    coeffs = [simplify(r.coefficient(k)) for k in (3, 2, 1, 0)]
    return ResolventCubic(*coeffs)


def resolvent_from_formulas(quartic):
    a1, a2, a3, a4 = quartic
    b3 = a3 * a3 - a1 * a1 * a4
    b2 = 4 * a2 * a3 - a1 * a1 * a3 - 8 * a1 * a4
    b1 = -a1 * a1 * a2 - 2 * a1 * a3 - 16 * a4 + 4 * a2 * a2
    b0 = -8 * a3 - a1 * a1 * a1 + 4 * a1 * a2
    return ResolventCubic(b0, b1, b2, b3)


# -- symbolic identities ------------------------------------------------------

def verify_resolvent_formulas():
    P = QuarticCoeffs.generic()
    by_division = resolvent_from_division(P)
    by_formula = resolvent_from_formulas(P)
    ok = by_division == by_formula
    witness = {} if ok else {"division": [str(b) for b in by_division],
                             "formulas": [str(b) for b in by_formula]}
    return ClaimReport("prop2.resolvent_formulas", PASS if ok else FAIL, witness,
                       "Q = P'^2 mod P has the closed-form coefficients b0..b3")


def verify_disc_relation(mutate_b0=False):
    """disc(Q) == disc(P) * b0^2 over Q(a1..a4)."""
    P = QuarticCoeffs.generic()
    Q = resolvent_from_formulas(P)
    if mutate_b0:
        Q = ResolventCubic(Q.b0 + 1, Q.b1, Q.b2, Q.b3)
    lhs = discriminant(Q.poly())
    rhs = discriminant(P.poly()) * Q.b0 * Q.b0
    return identity_report("prop2.disc_Q", lhs, rhs, "disc(Q) = disc(P) * b0^2",
                           mutated=mutate_b0)


def hessian_at_one(quartic, drop_term=False):
    """H(X, 1) for the binary quartic Y^4 P(X/Y), H = P_XX*P_YY - P_XY^2."""
    X, Y = MultiPoly.var("X"), MultiPoly.var("Y")
    a1, a2, a3, a4 = quartic
    form = X**4 + a1 * X**3 * Y + a2 * X**2 * Y**2 + a3 * X * Y**3 + a4 * Y**4
    pxx = form.diff("X").diff("X")
    pyy = form.diff("Y").diff("Y")
    pxy = form.diff("X").diff("Y")
    h = pxx * pyy if drop_term else pxx * pyy - pxy * pxy
    return substitute(h, {"Y": 1})


def verify_hessian_identity(drop_term=False):
    """H(X,1) == (-9*a1^2 + 24*a2) * P - 9*Q over Q(a1..a4)."""
    P = QuarticCoeffs.generic()
    Q = resolvent_from_formulas(P)
    lhs = hessian_at_one(P, drop_term)
    rhs = ((-9 * P.a1 * P.a1 + 24 * P.a2) * P.poly() - Q.poly() * 9).to_multipoly()
    return identity_report("prop2.hessian", lhs, rhs, "H(X,1) = (-9*a1^2 + 24*a2)*P - 9*Q",
                           dropped_term=drop_term)


def _proportional(r, q):
    """Return ``u`` with ``r == u*q`` coefficientwise, or None."""
    rc = [r.coefficient(k) for k in (3, 2, 1, 0)]
    qc = [q.coefficient(k) for k in (3, 2, 1, 0)]
    if r.degree > 3:
        return None
    for i in range(4):
        for j in range(i + 1, 4):
            if rc[i] * qc[j] - rc[j] * qc[i]:
                return None
    k = next(i for i in range(4) if qc[i])
    return simplify(ring_div(rc[k], qc[k]))


def pencil_analysis(quartic=None):
    """Find U(T) with (d/dX P_T)^2 = U(T)*Q modulo P or modulo P_T, where P_T = P - T*Q.

    Both readings are tried; the one that holds is recorded. The discriminant
    identity disc(P_T) = disc(P)*U(T)^2 is then checked exactly.
    """
    P = quartic or QuarticCoeffs.generic()
    p = P.poly()
    q = resolvent_from_formulas(P).poly()
    T = MultiPoly.var("T")
    pt = p - q * T
    dpt2 = pt.derivative() ** 2
    tried = {}
    found = None
    for name, modulus in (("P", p), ("P_T", pt)):
        u = _proportional(rem(dpt2, modulus), q)
        tried[name] = u is not None
        if u is not None and found is None:
            found = (name, u)
    if found is None:
        raise NoProportionality("neither P nor P_T gives a remainder proportional to Q")
    name, u = found
    holds = not (discriminant(pt) - discriminant(p) * u * u)
    return PencilReport(u, name, holds, tried)


def verify_pencil():
    try:
        rep = pencil_analysis()
    except NoProportionality as exc:
        return [ClaimReport("prop2.pencil_proportional", FAIL, {"error": str(exc)})]
    return [
        ClaimReport("prop2.pencil_proportional", PASS,
                    {"modulus": rep.modulus_used, "tried": rep.tried, "U_of_T": str(rep.U_of_T)},
                    "(P_T')^2 = U(T)*Q modulo a quartic of the pencil"),
        ClaimReport("prop2.pencil_disc", PASS if rep.disc_identity_holds else FAIL,
                    {"modulus": rep.modulus_used}, "disc(P_T) = disc(P) * U(T)^2"),
    ]


# -- birational coordinates ---------------------------------------------------

def to_c_coords(quartic):
    Q = resolvent_from_formulas(quartic)
    if not Q.b0:
        raise DegenerateResolvent("b0 = 0: the map to (a1, c1, c2, c3) is undefined here")
    return CCoords(quartic.a1, *(simplify(ring_div(b, Q.b0)) for b in (Q.b1, Q.b2, Q.b3)))


def from_c_coords(c):
    a1, c1, c2, c3 = c
    a2 = c1 * a1 - 2 * c2
    a3 = c2 * a1 - 8 * c3
    a4 = c3 * a1 + c2 * c2 - 4 * c1 * c3
    return QuarticCoeffs(a1, simplify(a2), simplify(a3), simplify(a4))


def verify_birational():
    """Both compositions of to_c_coords and from_c_coords are the identity."""
    P = QuarticCoeffs.generic()
    back = from_c_coords(to_c_coords(P))
    ok_a = all(not (x - y) for x, y in zip(back, P))
    C = CCoords(*(MultiPoly.var(n) for n in ("a1", "c1", "c2", "c3")))
    again = to_c_coords(from_c_coords(C))
    ok_c = all(not (x - y) for x, y in zip(again, C))
    witness = {}
    if not ok_a:
        witness["a_roundtrip"] = [str(x) for x in back]
    if not ok_c:
        witness["c_roundtrip"] = [str(x) for x in again]
    return ClaimReport("prop2.birational", PASS if ok_a and ok_c else FAIL, witness,
                       "(a1..a4) <-> (a1, c1, c2, c3) is birational")


def verify_prop2():
    """Every symbolic resolvent identity, as a list of reports."""
    return [verify_resolvent_formulas(), verify_disc_relation(), verify_hessian_identity(),
            verify_birational()] + verify_pencil()


# -- numeric root formula --------------------------------------------------------

PAIRINGS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


def paired_root_values(roots, min_denominator=0.0):
    out = []
    for (i, j), (k, l) in PAIRINGS:
        den = roots[i] + roots[j] - roots[k] - roots[l]
        if abs(den) < min_denominator or den == 0:
            raise NumericDegenerate(f"pairing denominator {abs(den):.3g} below {min_denominator:g}")
        out.append((roots[i] * roots[j] - roots[k] * roots[l]) / den)
    return out


def verify_root_formula(quartic, tol=1e-9, min_denominator=1e-6):
    """Numerically check that the paired-root values are roots of Q.

    The residual is measured relative to ``max|bi| * max(1, |value|)**3``.
    Raises SingularInput if disc(P) = 0 and NumericDegenerate if a pairing
    denominator is smaller than ``min_denominator``.
    """
    from .galois import numeric_roots

    p = quartic.poly()
    if discriminant(p) == 0:
        raise SingularInput("root formula check needs disc(P) != 0")
    Q = resolvent_from_formulas(quartic)
    b = [complex(Fraction(x)) for x in Q]
    scale = max(abs(x) for x in b)
    roots = numeric_roots([Fraction(c) for c in p.coeffs])
    values = paired_root_values(roots, min_denominator)
    residuals = []
    for z in values:
        val = ((b[0] * z + b[1]) * z + b[2]) * z + b[3]
        residuals.append(abs(val) / (scale * max(1.0, abs(z)) ** 3))
    ok = all(r < tol for r in residuals)
    return ClaimReport("prop2.root_formula", PASS if ok else FAIL,
                       {"values": [f"{z.real:.12g}{z.imag:+.12g}j" for z in values],
                        "relative_residuals": [f"{r:.3e}" for r in residuals]},
                       "Q vanishes at (x1*x2 - x3*x4)/(x1 + x2 - x3 - x4)")


def check_root_formula(quartic, tol=1e-9, min_denominator=1e-6):
    """Like verify_root_formula but reports degenerate inputs as skipped."""
    try:
        return verify_root_formula(quartic, tol, min_denominator)
    except NumericDegenerate as exc:
        return ClaimReport("prop2.root_formula", SKIPPED, {"reason": str(exc)})

