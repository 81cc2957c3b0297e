"""Exact rationals, integer factorization, Hilbert symbols and 2-torsion Brauer classes over Q.

Rationals are plain :class:`fractions.Fraction` values. A quaternion class over Q
is determined by the (even) set of places where it ramifies, so
:class:`BrauerClass` simply stores that set and adds by symmetric difference.
"""

import math
import os
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import FactorizationExceeded, ParseError, ZeroSymbolArgument

Rational = Fraction

DEFAULT_FACTOR_CEILING = 2**96
TRIAL_LIMIT = 10**6
RHO_BUDGET = 1 << 21

_MR_BASES_64 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def factor_ceiling():
    env = os.environ.get("A4WITT_FACTOR_CEILING")
    if env:
        return int(env, 0)
    return DEFAULT_FACTOR_CEILING


# -- rationals ---------------------------------------------------------------

_RATIONAL_RE = re.compile(r"-?\d+(/\d+)?\Z")


def parse_rational(text):
    """Parse ``"p/q"`` or ``"p"`` (no whitespace, minus only on ``p``)."""
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}")
    if not _RATIONAL_RE.match(text):
        pos = 0
        for pos, ch in enumerate(text):
            if not (ch.isdigit() or (ch == "-" and pos == 0) or ch == "/"):
                break
        else:
            pos = len(text)
        raise ParseError("malformed rational", text, pos)
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ParseError("zero denominator", text, text.index("/") + 1)
    return Fraction(int(num), int(den) if den else 1)


def format_rational(q):
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def height(q):
    q = Fraction(q)
    return max(abs(q.numerator), q.denominator)


# -- primality and factorization --------------------------------------------

def _small_primes(limit):
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


_PRIMES = None


def _primes():
    global _PRIMES
    if _PRIMES is None:
        _PRIMES = _small_primes(TRIAL_LIMIT)
    return _PRIMES


def _mr_witness(n, d, s, a):
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_probable_prime(n):
    """Miller-Rabin: deterministic below 2**64, 40 seeded random rounds above."""
    if n < 2:
        return False
    for p in _MR_BASES_64:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < 2**64:
        bases = _MR_BASES_64
    else:
        rng = random.Random(n)
        bases = [rng.randrange(2, n - 1) for _ in range(40)]
    return not any(_mr_witness(n, d, s, a) for a in bases)


def _pollard_brent(n, budget):
    # Brent's cycle variant with batched gcds; tries several polynomials x^2 + c.
    if n % 2 == 0:
        return 2
    rng = random.Random(n ^ 0xA4)
    spent = 0
    m = 128
    while spent < budget:
        y, c = rng.randrange(1, n), rng.randrange(1, n)
        g = r = q = 1
        x = ys = y
        while g == 1 and spent < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            spent += r
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


def _split(n, out, ceiling):
    if n == 1:
        return
    if is_probable_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    root = math.isqrt(n)
    if root * root == n:
        _split(root, out, ceiling)
        _split(root, out, ceiling)
        return
    if n > ceiling:
        raise FactorizationExceeded(
            f"composite cofactor {n} exceeds the factorization ceiling {ceiling}")
    d = _pollard_brent(n, RHO_BUDGET)
    if d is None:
        raise FactorizationExceeded(f"Pollard rho budget exhausted on {n}")
    _split(d, out, ceiling)
    _split(n // d, out, ceiling)


@lru_cache(maxsize=65536)
def _factor_positive(n, ceiling):
    out = {}
    for p in _primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
            if n > 1 and p > 1000 and is_probable_prime(n):
                break
        elif p == 997 and is_probable_prime(n):
            break
    _split(n, out, ceiling)
    return tuple(sorted(out.items()))


def factorize(n, ceiling=None):
    """Return ``(sign, {prime: exponent})`` with ``sign * prod(p**e) == n``.

    Trial division below 10**6, then Pollard rho. The ceiling bounds the
    composite cofactor handed to Pollard rho; a prime cofactor of any size
    is accepted once it passes Miller-Rabin.
    """
    n = int(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    if ceiling is None:
        ceiling = factor_ceiling()
    sign = -1 if n < 0 else 1
    return sign, dict(_factor_positive(abs(n), ceiling))


def _squarefree_int(n):
    sign, fac = factorize(n)
    out = sign
    for p, e in fac.items():
        if e % 2:
            out *= p
    return out


def squarefree_part(q):
    """The squarefree integer ``d`` with ``q = d * (rational square)``."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("squarefree_part(0) is undefined")
    # n/d = n*d / d^2
    return _squarefree_int(q.numerator * q.denominator)


def is_square(q):
    q = Fraction(q)
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


def rational_sqrt(q):
    """Square root of a rational square, or None."""
    q = Fraction(q)
    if not is_square(q):
        return None
    return Fraction(math.isqrt(q.numerator), math.isqrt(q.denominator))


# -- places and Hilbert symbols ---------------------------------------------

@dataclass(frozen=True)
class Place:
    """The real place (``prime is None``) or the p-adic place for a prime ``p``."""

    prime: int = None

    def __post_init__(self):
        if self.prime is not None and not is_probable_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")

    @property
    def is_real(self):
        return self.prime is None

    def sort_key(self):
        return (1, 0) if self.prime is None else (0, self.prime)

    def __str__(self):
        return "real" if self.prime is None else str(self.prime)

    @classmethod
    def parse(cls, text):
        return REAL if text == "real" else cls(int(text))


REAL = Place()


def valuation(n, p):
    """p-adic valuation of a nonzero integer."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def legendre(a, p):
    """Legendre symbol (a|p) for an odd prime ``p``."""
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def _split_rational(q, p):
    v1, n = valuation(q.numerator, p)
    v2, d = valuation(q.denominator, p)
    return v1 - v2, n * d


def hilbert_symbol(a, b, v):
    """Local Hilbert symbol (a, b)_v for nonzero rationals ``a``, ``b``."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ZeroSymbolArgument("Hilbert symbol is undefined at 0")
    if not isinstance(v, Place):
        v = REAL if v is None or v == "real" else Place(int(v))
    if v.is_real:
        return -1 if (a < 0 and b < 0) else 1
    p = v.prime
    # u = unit part (as an integer n*d with the same square class mod p-adic units)
    alpha, u = _split_rational(a, p)
    beta, w = _split_rational(b, p)
    if p == 2:
        eps_u, eps_w = (u % 4 == 3), (w % 4 == 3)
        om_u, om_w = (u % 8 in (3, 5)), (w % 8 in (3, 5))
        e = (eps_u and eps_w) + (alpha % 2) * om_w + (beta % 2) * om_u
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    if beta % 2:
        sign *= legendre(u, p)
    if alpha % 2:
        sign *= legendre(w, p)
    return sign


def candidate_places(*values):
    """Real place, 2, and odd primes dividing the squarefree parts of ``values``."""
    primes = {2}
    for x in values:
        _, fac = factorize(squarefree_part(x))
        primes.update(fac)
    return [Place(p) for p in sorted(primes)] + [REAL]


# -- Brauer classes ----------------------------------------------------------

@dataclass(frozen=True)
class BrauerClass:
    """A 2-torsion Brauer class of Q, stored as its set of ramified places."""

    ramified: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "ramified", frozenset(self.ramified))
        if len(self.ramified) % 2:
            raise ValueError(f"ramification set {self} has odd cardinality")

    @property
    def is_trivial(self):
        return not self.ramified

    def places(self):
        return sorted(self.ramified, key=Place.sort_key)

    def __add__(self, other):
        return class_add(self, other)

    def __str__(self):
        return "{" + ", ".join(str(p) for p in self.places()) + "}"

    def to_json(self):
        return [str(p) for p in self.places()]

    @classmethod
    def of(cls, *places):
        return cls(frozenset(p if isinstance(p, Place) else Place.parse(str(p)) for p in places))


TRIVIAL = BrauerClass()


def class_add(x, y):
    return BrauerClass(x.ramified ^ y.ramified)


def symbol_class(a, b):
    """Class of the quaternion algebra (a, b) over Q."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ZeroSymbolArgument("symbol (a, b) requires nonzero a and b")
    a, b = squarefree_part(a), squarefree_part(b)
    if a == 1 or b == 1:
        return TRIVIAL
    return BrauerClass(frozenset(v for v in candidate_places(a, b)
                                 if hilbert_symbol(a, b, v) == -1))


def symbol_sum(pairs):
    out = TRIVIAL
    for a, b in pairs:
        out = class_add(out, symbol_class(a, b))
    return out
