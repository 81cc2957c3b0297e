"""Galois groups of rational cubics and quartics, real-root counts, numeric roots."""

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import is_square
from .errors import NotSquarefree, ReducibleInput, SingularInput
from .poly import UniPoly, discriminant, gcd, rem

CUBIC_LABELS = ("C3", "S3")
QUARTIC_LABELS = ("C4", "V4", "D4", "A4", "S4")


@dataclass(frozen=True)
class GaloisLabel:
    name: str
    shape: tuple = ()

    def __post_init__(self):
        if self.name not in CUBIC_LABELS + QUARTIC_LABELS + ("Reducible",):
            raise ValueError(f"unknown Galois label {self.name!r}")

    @property
    def is_reducible(self):
        return self.name == "Reducible"

    def __str__(self):
        if self.is_reducible:
            return f"Reducible{list(self.shape)}"
        return self.name

    def to_json(self):
        if self.is_reducible:
            return {"label": "Reducible", "shape": list(self.shape)}
        return self.name


@dataclass
class GroupCertificate:
    disc: Fraction
    disc_is_square: bool
    resolvent: list
    resolvent_rational_roots: list
    auxiliary: list = field(default_factory=list)

    def to_json(self):
        from .reports import jsonable

        return {"disc": jsonable(self.disc), "disc_is_square": self.disc_is_square,
                "resolvent": jsonable(self.resolvent),
                "resolvent_rational_roots": jsonable(self.resolvent_rational_roots),
                "auxiliary": [[q, jsonable(v), ok] for q, v, ok in self.auxiliary]}


def _as_rational_poly(f):
    if isinstance(f, UniPoly):
        coeffs = [Fraction(c) for c in f.coeffs]
    else:
        coeffs = [Fraction(c) for c in f]
    return UniPoly(coeffs, "X")


def _monic(f):
    f = _as_rational_poly(f)
    lc = Fraction(f.lc)
    return UniPoly([Fraction(c) / lc for c in f.coeffs], f.var)


def _integral_scale(f):
    """An integer m > 0 with m^k * a_k integral for the monic ``f`` (lcm of denominators)."""
    m = 1
    for c in f.coeffs:
        m = math.lcm(m, Fraction(c).denominator)
    return m


def _primitive_ints(f):
    """Integer coefficients of a positive multiple of ``f`` (same signs everywhere)."""
    coeffs = [Fraction(c) for c in f.coeffs]
    m = 1
    for c in coeffs:
        m = math.lcm(m, c.denominator)
    ints = [int(c * m) for c in coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    return [c // g for c in ints] if g > 1 else ints


def _sign_at_half(coeffs, k):
    """Sign of p(k/2) for integer descending ``coeffs``, in integer arithmetic."""
    acc = 0
    for j, c in enumerate(coeffs):
        acc = acc * k + (c << j)
    return (acc > 0) - (acc < 0)


def _root_bound(coeffs):
    """Power of two exceeding every |root| of the monic integer polynomial (Fujiwara)."""
    e = 0
    for k, c in enumerate(coeffs[1:], start=1):
        if c:
            e = max(e, -(-abs(c).bit_length() // k))
    return 1 << (e + 1)


def _integer_roots(coeffs):
    """Integer roots of a monic integer polynomial by exact Sturm isolation.

    Interval endpoints are half-integers, which cannot be roots, so every
    Sturm count is exact; an interval holding a single simple root is then
    narrowed by sign bisection alone.
    """
    f = UniPoly([Fraction(c) for c in coeffs])
    if f.degree < 1:
        return []
    sf = f
    g = gcd(f, f.derivative())
    if g.degree > 0:
        sf = UniPoly([Fraction(c) for c in _divmod_exact(f, g)])
    seq = [_primitive_ints(p) for p in sturm_sequence(sf)]
    base = seq[0]
    cache = {}

    def changes(k):
        if k not in cache:
            cache[k] = _sign_changes([_sign_at_half(p, k) for p in seq])
        return cache[k]

    bound = _root_bound(coeffs)
    roots = []
    stack = [(-2 * bound - 1, 2 * bound + 1)]
    while stack:
        lo, hi = stack.pop()
        count = changes(lo) - changes(hi)
        if count == 0:
            continue
        if count == 1:
            s_lo = _sign_at_half(base, lo)
            while hi - lo > 2:
                mid = (lo + hi) // 2
                mid += 1 - mid % 2
                if _sign_at_half(base, mid) == s_lo:
                    lo = mid
                else:
                    hi = mid
        if hi - lo == 2:
            cand = (lo + 1) // 2
            if f(cand) == 0:
                roots.append(cand)
            continue
        mid = (lo + hi) // 2
        mid += 1 - mid % 2
        stack.append((lo, mid))
        stack.append((mid, hi))
    return roots


def _divmod_exact(f, g):
    from .poly import divrem

    q, r = divrem(f, g)
    assert not r
    return q.coeffs


def rational_roots(f):
    """All distinct rational roots of a nonzero rational polynomial, ascending.

    The monic rescaling X = Y/m makes every rational root an integer root of an
    integer polynomial; those are isolated exactly with Sturm sequences, so no
    coefficient ever has to be factored.
    """
    f = _as_rational_poly(f)
    if not f:
        raise ValueError("rational_roots of the zero polynomial")
    roots = []
    coeffs = list(f.coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
        if 0 not in roots:
            roots.append(Fraction(0))
    g = _monic(UniPoly(coeffs))
    if g.degree >= 1:
        m = _integral_scale(g)
        scaled = [int(Fraction(c) * m**k) for k, c in enumerate(g.coeffs)]
        roots.extend(Fraction(r, m) for r in _integer_roots(scaled))
    for r in roots:
        assert f(r) == 0
    return sorted(set(roots))


def depressed_quartic(f):
    """(p, q, r) with f(Y - a1/4) = Y^4 + p*Y^2 + q*Y + r for monic ``f``."""
    _, a1, a2, a3, a4 = (Fraction(c) for c in _monic(f).coeffs)
    p = a2 - Fraction(3, 8) * a1**2
    q = a3 - a1 * a2 / 2 + a1**3 / 8
    r = a4 - a1 * a3 / 4 + a1**2 * a2 / 16 - Fraction(3, 256) * a1**4
    return p, q, r


def _quadratic_split(f):
    """Witness for a factorization into two rational quadratics, or None."""
    p, q, r = depressed_quartic(f)
    if q != 0:
        cubic = UniPoly([1, 2 * p, p * p - 4 * r, -q * q])
        for w in rational_roots(cubic):
            if w > 0 and is_square(w):
                return {"w": w, "cubic_roots": rational_roots(cubic)}
        return None
    if is_square(p * p - 4 * r):
        return {"biquadratic_disc": p * p - 4 * r}
    if is_square(r):
        t = Fraction(math.isqrt(r.numerator), math.isqrt(r.denominator))
        for tt in (t, -t):
            w = 2 * tt - p
            if w > 0 and is_square(w):
                return {"w": w, "t": tt}
    return None


def factor_shape(f):
    """Degrees of the irreducible factors of a squarefree rational quartic."""
    k = len(rational_roots(f))
    if k == 4:
        return (1, 1, 1, 1)
    if k == 2:
        return (1, 1, 2)
    if k == 1:
        return (1, 3)
    return (2, 2) if _quadratic_split(f) else (4,)


def is_irreducible_quartic(f):
    """``(irreducible, certificate)`` for a rational quartic with nonzero discriminant."""
    f = _monic(f)
    if f.degree != 4:
        raise ValueError("expected a quartic")
    disc = discriminant(f)
    if disc == 0:
        raise SingularInput("quartic has a repeated root")
    roots = rational_roots(f)
    cert = {"rational_roots": roots, "depressed": depressed_quartic(f)}
    if roots:
        cert["shape"] = factor_shape(f)
        return False, cert
    split = _quadratic_split(f)
    cert["quadratic_split"] = split
    if split:
        cert["shape"] = (2, 2)
        return False, cert
    cert["shape"] = (4,)
    return True, cert


def cubic_galois(f):
    f = _monic(f)
    if f.degree != 3:
        raise ValueError("expected a cubic")
    if rational_roots(f):
        raise ReducibleInput("cubic has a rational root", shape=(1, 2) if len(rational_roots(f)) == 1 else (1, 1, 1))
    return GaloisLabel("C3" if is_square(discriminant(f)) else "S3")


def quartic_resolvent(f):
    """z^3 - a2 z^2 + (a1 a3 - 4 a4) z - (a1^2 a4 - 4 a2 a4 + a3^2); roots x1x2 + x3x4, ..."""
    _, a1, a2, a3, a4 = _monic(f).coeffs
    return UniPoly([1, -a2, a1 * a3 - 4 * a4, -(a1 * a1 * a4 - 4 * a2 * a4 + a3 * a3)])


def _splits_over(disc_poly, d):
    """Does a monic quadratic with discriminant ``disc_poly`` split over Q(sqrt d)?"""
    return disc_poly == 0 or is_square(disc_poly) or is_square(disc_poly * d)


def quartic_galois(f):
    """``(GaloisLabel, GroupCertificate)`` for an irreducible rational quartic."""
    f = _monic(f)
    irreducible, icert = is_irreducible_quartic(f)
    if not irreducible:
        raise ReducibleInput(f"quartic factors with shape {list(icert['shape'])}", shape=icert["shape"])
    disc = discriminant(f)
    square = is_square(disc)
    res = quartic_resolvent(f)
    rroots = rational_roots(res)
    cert = GroupCertificate(disc, square, list(res.coeffs), rroots)
    if not rroots:
        return GaloisLabel("A4" if square else "S4"), cert
    if len(rroots) == 3:
        return GaloisLabel("V4"), cert
    # exactly one rational resolvent root: Kappe-Warren test over Q(sqrt(disc))
    _, a1, a2, _, a4 = f.coeffs
    r = rroots[0]
    d1 = r * r - 4 * a4
    d2 = a1 * a1 - 4 * (a2 - r)
    s1, s2 = _splits_over(d1, disc), _splits_over(d2, disc)
    cert.auxiliary = [("disc(X^2 - r X + a4)", d1, s1), ("disc(X^2 + a1 X + a2 - r)", d2, s2)]
    return GaloisLabel("C4" if (s1 and s2) else "D4"), cert


def classify_quartic(f):
    """Total classification: reducible quartics get a ``Reducible(shape)`` label."""
    f = _monic(f)
    if discriminant(f) == 0:
        raise SingularInput("quartic has a repeated root")
    try:
        return quartic_galois(f)
    except ReducibleInput as exc:
        return GaloisLabel("Reducible", tuple(exc.shape)), None


# -- real roots -----------------------------------------------------------------

def sturm_sequence(f):
    f = _as_rational_poly(f)
    seq = [f, f.derivative()]
    while seq[-1].degree > 0:
        r = rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append(-r)
    return seq


def _sign_changes(signs):
    signs = [s for s in signs if s]
    return sum(1 for x, y in zip(signs, signs[1:]) if x != y)


def real_root_count(f):
    """Number of distinct real roots of a squarefree rational polynomial (Sturm)."""
    f = _as_rational_poly(f)
    if f.degree < 1:
        return 0
    if gcd(f, f.derivative()).degree > 0:
        raise NotSquarefree("polynomial has a repeated factor")
    seq = sturm_sequence(f)
    at_pos = [(p.lc > 0) - (p.lc < 0) for p in seq]
    at_neg = [s if p.degree % 2 == 0 else -s for s, p in zip(at_pos, seq)]
    return _sign_changes(at_neg) - _sign_changes(at_pos)


# -- numeric roots ------------------------------------------------------------------

def numeric_roots(coeffs, max_iter=500, eps=1e-13):
    """Complex roots of a polynomial (descending coefficients) by Durand-Kerner."""
    coeffs = [complex(Fraction(c)) if not isinstance(c, complex) else c for c in coeffs]
    lead = coeffs[0]
    coeffs = [c / lead for c in coeffs]
    n = len(coeffs) - 1
    if n < 1:
        return []
    radius = 1 + max(abs(c) for c in coeffs[1:])
    seed = 0.4 + 0.9j
    z = [radius * seed ** k for k in range(n)]

    def value(x):
        acc = 0j
        for c in coeffs:
            acc = acc * x + c
        return acc

    for _ in range(max_iter):
        delta = 0.0
        for i in range(n):
            den = 1 + 0j
            for j in range(n):
                if i != j:
                    den *= z[i] - z[j]
            if den == 0:
                den = 1e-300
            step = value(z[i]) / den
            z[i] -= step
            delta = max(delta, abs(step) / max(1.0, abs(z[i])))
        if delta < eps:
            break
    # a few Newton steps to polish
    deriv = [c * (n - i) for i, c in enumerate(coeffs[:-1])]
    for i in range(n):
        for _ in range(3):
            d = 0j
            for c in deriv:
                d = d * z[i] + c
            if d == 0:
                break
            z[i] -= value(z[i]) / d
    return z


def numeric_real_root_count(coeffs, imag_tol=1e-9):
    return sum(1 for z in numeric_roots(coeffs) if abs(z.imag) < imag_tol)
