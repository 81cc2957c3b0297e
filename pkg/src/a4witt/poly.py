"""Sparse exact polynomials over Q.

Monomials are packed into a single Python int: the total degree sits in the
top field and each variable owns a fixed-width exponent field below it, with
the first variable in the most significant position. Integer comparison of
two keys is then graded-lex comparison, and multiplying monomials is adding
keys.

``MultiPoly`` is the multivariate ring, ``RatFunc`` its fraction field (kept
unreduced; equality by cross-multiplication) and ``UniPoly`` a univariate
polynomial in a distinguished variable whose coefficients may be rationals,
``MultiPoly`` or ``RatFunc`` values.
"""

import math
import re
from fractions import Fraction
from functools import lru_cache

from .errors import NotDivisible, ParseError

BASE_VARIABLES = ("a1", "a2", "a3", "a4", "T", "U", "V", "u", "v",
                  "c1", "c2", "c3", "X", "Y", "A", "B", "C", "D", "E")

MAX_VARS = 48
_BITS = 12
_MASK = (1 << _BITS) - 1
_DEG_SHIFT = MAX_VARS * _BITS

_VARS = list(BASE_VARIABLES)
_INDEX = {name: i for i, name in enumerate(_VARS)}

_NUMBER = (int, Fraction)


def var_index(name):
    """Index of ``name`` in the global variable order, registering it if new."""
    try:
        return _INDEX[name]
    except KeyError:
        if len(_VARS) >= MAX_VARS:
            raise ValueError("too many polynomial variables") from None
        _VARS.append(name)
        _INDEX[name] = len(_VARS) - 1
        return _INDEX[name]


def variable_order():
    return tuple(_VARS)


def _shift(i):
    return (MAX_VARS - 1 - i) * _BITS


def _var_key(i, e=1):
    return (e << _DEG_SHIFT) | (e << _shift(i))


def _exp(key, i):
    return (key >> _shift(i)) & _MASK


def _tdeg(key):
    return key >> _DEG_SHIFT


def _exponents(key):
    """{variable index: exponent} for the nonzero exponents of ``key``."""
    out = {}
    body = key & ((1 << _DEG_SHIFT) - 1)
    i = MAX_VARS - 1
    while body:
        e = body & _MASK
        if e:
            out[i] = e
        body >>= _BITS
        i -= 1
    return out


def _divides(small, big):
    if _tdeg(small) > _tdeg(big):
        return False
    for i, e in _exponents(small).items():
        if _exp(big, i) < e:
            return False
    return True


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _coerce_number(c):
    if isinstance(c, bool):
        c = int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return _norm(c)
    raise TypeError(f"not a rational number: {c!r}")


class MultiPoly:
    """Sparse multivariate polynomial with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        # terms: {packed monomial key: nonzero int/Fraction}
        self.terms = terms if terms is not None else {}

    # constructors
    @classmethod
    def var(cls, name):
        return cls({_var_key(var_index(name)): 1})

    @classmethod
    def const(cls, c):
        c = _coerce_number(c)
        return cls({0: c} if c else {})

    @classmethod
    def coerce(cls, x):
        if isinstance(x, MultiPoly):
            return x
        return cls.const(x)

    @classmethod
    def monomial(cls, coeff, exps):
        """``coeff * prod(name**e)`` from a ``{name: exponent}`` map."""
        key = 0
        for name, e in exps.items():
            if e:
                key += _var_key(var_index(name), e)
        c = _coerce_number(coeff)
        return cls({key: c} if c else {})

    # predicates and accessors
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get(0, 0)

    def variables(self):
        idx = set()
        for key in self.terms:
            idx.update(_exponents(key))
        return tuple(_VARS[i] for i in sorted(idx))

    def total_degree(self):
        return max((_tdeg(k) for k in self.terms), default=-1)

    def degree(self, name):
        i = var_index(name)
        return max((_exp(k, i) for k in self.terms), default=-1)

    def leading_key(self):
        return max(self.terms)

    def leading_coefficient(self):
        return self.terms[max(self.terms)]

    def __len__(self):
        return len(self.terms)

    def items(self):
        """(exponent map by variable name, coefficient), in descending order."""
        for key in sorted(self.terms, reverse=True):
            yield {_VARS[i]: e for i, e in _exponents(key).items()}, self.terms[key]

    # arithmetic
    def __neg__(self):
        return MultiPoly({k: -c for k, c in self.terms.items()})

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, _NUMBER):
            other = MultiPoly.const(other)
        elif not isinstance(other, MultiPoly):
            return NotImplemented
        if len(other.terms) > len(self.terms):
            self, other = other, self
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = _norm(s)
            else:
                out.pop(k, None)
        return MultiPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, _NUMBER):
            other = MultiPoly.const(other)
        elif not isinstance(other, MultiPoly):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) - c
            if s:
                out[k] = _norm(s)
            else:
                out.pop(k, None)
        return MultiPoly(out)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = _coerce_number(c)
        if not c:
            return MultiPoly()
        if c == 1:
            return self
        return MultiPoly({k: _norm(v * c) for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, _NUMBER):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return MultiPoly({k: _norm(c) for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, _NUMBER):
            if other == 0:
                raise ZeroDivisionError("polynomial division by zero")
            return self.scale(Fraction(1) / Fraction(other))
        if isinstance(other, MultiPoly):
            if other.is_constant():
                return self / other.constant_value()
            return RatFunc(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, _NUMBER):
            return RatFunc(MultiPoly.const(other), self)
        return NotImplemented

    def exact_div(self, other):
        """Quotient ``q`` with ``q * other == self``; raises NotDivisible otherwise."""
        if isinstance(other, _NUMBER):
            return self / other
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        if other.is_constant():
            return self / other.constant_value()
        lk = other.leading_key()
        lc = other.terms[lk]
        rest = [(k, c) for k, c in other.terms.items() if k != lk]
        rem = dict(self.terms)
        quot = {}
        while rem:
            k = max(rem)
            if not _divides(lk, k):
                raise NotDivisible("polynomial does not divide exactly")
            qk = k - lk
            qc = _norm(Fraction(rem.pop(k)) / lc)
            quot[qk] = qc
            for ok, oc in rest:
                t = ok + qk
                s = rem.get(t, 0) - qc * oc
                if s:
                    rem[t] = _norm(s)
                else:
                    rem.pop(t, None)
        return MultiPoly(quot)

    def __eq__(self, other):
        if isinstance(other, _NUMBER):
            other = MultiPoly.const(other)
        elif isinstance(other, RatFunc):
            return other == self
        elif not isinstance(other, MultiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # calculus and structure
    def diff(self, name):
        i = var_index(name)
        unit = _var_key(i)
        out = {}
        for k, c in self.terms.items():
            e = _exp(k, i)
            if e:
                out[k - unit] = _norm(c * e)
        return MultiPoly(out)

    def coefficients_in(self, name):
        """``{exponent: MultiPoly}`` viewing self as a polynomial in ``name``."""
        i = var_index(name)
        out = {}
        for k, c in self.terms.items():
            e = _exp(k, i)
            out.setdefault(e, {})[k - _var_key(i, e) if e else k] = c
        return {e: MultiPoly(t) for e, t in out.items()}

    def to_unipoly(self, name):
        coeffs = self.coefficients_in(name)
        if not coeffs:
            return UniPoly([], name)
        n = max(coeffs)
        return UniPoly([coeffs.get(e, MultiPoly()) for e in range(n, -1, -1)], name)

    def content(self):
        """Positive rational ``c`` such that ``self / c`` has coprime integer coefficients."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            c = Fraction(c)
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def monomial_content(self):
        """Packed key of the largest monomial dividing every term."""
        if not self.terms:
            return 0
        common = None
        for k in self.terms:
            ex = _exponents(k)
            if common is None:
                common = ex
            else:
                common = {i: min(e, ex[i]) for i, e in common.items() if i in ex}
            if not common:
                return 0
        return sum(_var_key(i, e) for i, e in common.items())

    def divide_monomial(self, key):
        return MultiPoly({k - key: c for k, c in self.terms.items()})

    def evaluate(self, values):
        """Evaluate at a ``{name: value}`` map covering every variable present."""
        return substitute(self, values)

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        return format_poly(self)


class RatFunc:
    """Quotient of two ``MultiPoly`` values; not reduced to lowest terms."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = MultiPoly.coerce(num)
        den = MultiPoly.const(1) if den is None else MultiPoly.coerce(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num, self.den = num, MultiPoly.const(1)
            return
        # strip common monomial and the integer content of the denominator
        mk = num.monomial_content()
        dk = den.monomial_content()
        if mk and dk:
            common = {i: min(e, _exp(mk, i)) for i, e in _exponents(dk).items() if _exp(mk, i)}
            if common:
                ck = sum(_var_key(i, e) for i, e in common.items())
                num, den = num.divide_monomial(ck), den.divide_monomial(ck)
        c = den.content()
        if den.leading_coefficient() < 0:
            c = -c
        if c != 1:
            num, den = num / c, den / c
        self.num, self.den = num, den

    @classmethod
    def coerce(cls, x):
        if isinstance(x, RatFunc):
            return x
        return cls(x)

    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self):
        return self.den.is_constant()

    def to_poly(self):
        """Exact polynomial value; raises NotDivisible if there is none."""
        return self.num.exact_div(self.den)

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __add__(self, other):
        if isinstance(other, (MultiPoly,) + _NUMBER):
            other = RatFunc(other)
        elif not isinstance(other, RatFunc):
            return NotImplemented
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        if other.den.is_constant():
            return RatFunc(self.num + other.num * self.den / other.den.constant_value(), self.den)
        if self.den.is_constant():
            return RatFunc(other.num + self.num * other.den / self.den.constant_value(), other.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (MultiPoly,) + _NUMBER):
            other = RatFunc(other)
        elif not isinstance(other, RatFunc):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (MultiPoly,) + _NUMBER):
            other = RatFunc(other)
        elif not isinstance(other, RatFunc):
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (MultiPoly,) + _NUMBER):
            other = RatFunc(other)
        elif not isinstance(other, RatFunc):
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("rational function division by zero")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFunc(other) / self

    def __pow__(self, n):
        if n < 0:
            return RatFunc(self.den ** -n, self.num ** -n)
        return RatFunc(self.num ** n, self.den ** n)

    def __eq__(self, other):
        if isinstance(other, (MultiPoly,) + _NUMBER):
            other = RatFunc(other)
        elif not isinstance(other, RatFunc):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"


# -- generic coefficient helpers --------------------------------------------

def is_zero(c):
    return not c


def ring_div(a, b):
    """``a / b`` in the smallest available ring: exact polynomial quotient if possible."""
    if isinstance(b, _NUMBER):
        if isinstance(a, _NUMBER):
            return _norm(Fraction(a) / b)
        return a / b
    if isinstance(b, MultiPoly):
        if b.is_constant():
            return ring_div(a, b.constant_value())
        if isinstance(a, _NUMBER):
            a = MultiPoly.const(a)
        if isinstance(a, MultiPoly):
            try:
                return a.exact_div(b)
            except NotDivisible:
                return RatFunc(a, b)
    return RatFunc.coerce(a) / RatFunc.coerce(b)


def simplify(c):
    """Demote RatFunc -> MultiPoly -> number when the value allows it."""
    if isinstance(c, RatFunc):
        if c.den.is_constant():
            c = c.num / c.den.constant_value()
        else:
            try:
                c = c.to_poly()
            except NotDivisible:
                return c
    if isinstance(c, MultiPoly) and c.is_constant():
        return c.constant_value()
    if isinstance(c, Fraction):
        return _norm(c)
    return c


# -- univariate polynomials --------------------------------------------------

class UniPoly:
    """Polynomial in one distinguished variable, coefficients in descending degree."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs, var="X"):
        coeffs = [_coerce_number(c) if isinstance(c, (_NUMBER + (bool,))) else c for c in coeffs]
        i = 0
        while i < len(coeffs) and not coeffs[i]:
            i += 1
        self.coeffs = coeffs[i:]
        self.var = var

    @classmethod
    def x(cls, var="X"):
        return cls([1, 0], var)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def lc(self):
        return self.coeffs[0] if self.coeffs else 0

    def coefficient(self, k):
        """Coefficient of ``var**k``."""
        n = self.degree
        if k < 0 or k > n:
            return 0
        return self.coeffs[n - k]

    def ascending(self):
        return list(reversed(self.coeffs))

    def _wrap(self, coeffs):
        return UniPoly(coeffs, self.var)

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other], self.var)

    def __neg__(self):
        return self._wrap([-c for c in self.coeffs])

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.ascending(), other.ascending()
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return self._wrap(out[::-1])

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return self._wrap([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return self._wrap([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return self._wrap(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = self._wrap([1])
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            other = self._coerce(other)
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(not (a - b) for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def derivative(self):
        n = self.degree
        return self._wrap([c * (n - i) for i, c in enumerate(self.coeffs[:-1])])

    def map_coeffs(self, fn):
        return self._wrap([fn(c) for c in self.coeffs])

    def __call__(self, x):
        acc = 0
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def monic(self):
        lc = self.lc
        return self._wrap([ring_div(c, lc) for c in self.coeffs])

    def to_multipoly(self):
        out = MultiPoly()
        xv = MultiPoly.var(self.var)
        for c in self.coeffs:
            c = c if not isinstance(c, RatFunc) else c.to_poly()
            out = out * xv + c
        return out

    def __repr__(self):
        return f"UniPoly({self.coeffs!r}, {self.var!r})"

    def __str__(self):
        try:
            return format_poly(self.to_multipoly())
        except NotDivisible:
            n = self.degree
            return " + ".join(f"({c})*{self.var}^{n - i}" for i, c in enumerate(self.coeffs) if c)


def divrem(f, g):
    """Euclidean division ``f = q*g + r`` with ``deg r < deg g``."""
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    lc = g.lc
    monic = (lc == 1)
    r = list(f.coeffs)
    dg = g.degree
    q = []
    while len(r) - 1 >= dg and r:
        c = r[0] if monic else ring_div(r[0], lc)
        q.append(c)
        if c:
            for j in range(1, dg + 1):
                r[j] = r[j] - c * g.coeffs[j]
        r.pop(0)
    if not q:
        q = []
    return UniPoly(q, f.var), UniPoly(r, f.var)


def rem(f, g):
    return divrem(f, g)[1]


def gcd(f, g):
    """Monic gcd over a field of coefficients (rationals or rational functions)."""
    while g:
        f, g = g, rem(f, g)
    if not f:
        return f
    return f.monic()


def sylvester_matrix(f, g):
    m, n = f.degree, g.degree
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(f.coeffs) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(g.coeffs) + [0] * (size - n - 1 - i))
    return rows


def bareiss_det(matrix):
    """Fraction-free determinant; every division is exact in the coefficient ring."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = ring_div(a[i][j] * pivot - a[i][k] * a[k][j], prev)
        prev = pivot
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


def resultant(f, g):
    """``Res(f, g) = lc(f)**deg(g) * prod(g(root) for root of f)``, as det Sylvester(f, g)."""
    if not f or not g:
        raise ValueError("resultant of a zero polynomial")
    if f.degree == 0:
        return f.lc ** g.degree
    if g.degree == 0:
        return g.lc ** f.degree
    return simplify(bareiss_det(sylvester_matrix(f, g)))


@lru_cache(maxsize=None)
def generic_discriminant(n):
    """Discriminant of ``e0*x^n + ... + en`` as a MultiPoly in the ``_e{i}`` variables."""
    coeffs = [MultiPoly.var(f"_e{i}") for i in range(n + 1)]
    f = UniPoly(coeffs, "_x")
    res = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return MultiPoly.coerce(res).exact_div(coeffs[0]).scale(sign)


def discriminant(f):
    """``(-1)**(n(n-1)/2) * Res(f, f') / lc(f)``."""
    n = f.degree
    if n < 1:
        raise ValueError("discriminant of a constant polynomial")
    if all(isinstance(c, _NUMBER) for c in f.coeffs):
        sign = -1 if (n * (n - 1) // 2) % 2 else 1
        return _norm(sign * Fraction(resultant(f, f.derivative())) / f.lc)
    # symbolic coefficients: evaluate the cached generic formula
    formula = generic_discriminant(n)
    bindings = {f"_e{i}": c for i, c in enumerate(f.coeffs)}
    return simplify(substitute(formula, bindings))


# -- substitution ------------------------------------------------------------

def substitute(f, bindings):
    """Compose ``f`` with ``{variable: value}``; values may be numbers, MultiPoly or RatFunc.

    Returns a RatFunc whose denominator is the product of the binding
    denominators raised to the degree of ``f`` in each bound variable, or a
    plain MultiPoly/number when no denominator arises.
    """
    if isinstance(f, UniPoly):
        f = f.to_multipoly()
    elif isinstance(f, RatFunc):
        return RatFunc.coerce(substitute(f.num, bindings)) / RatFunc.coerce(substitute(f.den, bindings))
    elif isinstance(f, _NUMBER):
        return f
    bound = []
    for name, value in bindings.items():
        i = var_index(name)
        if isinstance(value, RatFunc):
            num, den = value.num, value.den
            if den.is_constant():
                num, den = num / den.constant_value(), None
        elif isinstance(value, MultiPoly):
            num, den = value, None
        else:
            value = Fraction(value)
            num = MultiPoly.const(value)
            den = None
        deg = max((_exp(k, i) for k in f.terms), default=0)
        if deg:
            bound.append((i, num, den, deg))

    num_pows = [_power_table(num, deg) for _, num, _, deg in bound]
    den_pows = [_power_table(den, deg) if den is not None else None for _, _, den, deg in bound]
    total = MultiPoly()
    # group terms by their exponents in the bound variables
    groups = {}
    for k, c in f.terms.items():
        exps = tuple(_exp(k, i) for i, _, _, _ in bound)
        rest = k - sum(_var_key(i, e) for (i, _, _, _), e in zip(bound, exps) if e)
        groups.setdefault(exps, {})[rest] = c
    for exps, rest_terms in groups.items():
        term = MultiPoly(rest_terms)
        for j, e in enumerate(exps):
            term = term * num_pows[j][e]
            if den_pows[j] is not None:
                term = term * den_pows[j][bound[j][3] - e]
        total = total + term
    denom = MultiPoly.const(1)
    for j, (_, _, den, deg) in enumerate(bound):
        if den is not None:
            denom = denom * den_pows[j][deg]
    if denom == 1:
        return simplify(total)
    return RatFunc(total, denom)


def _power_table(p, n):
    out = [MultiPoly.const(1)]
    for _ in range(n):
        out.append(out[-1] * p)
    return out


# -- square roots ------------------------------------------------------------

class NotASquare:
    """Marker result of :func:`poly_square_root` for non-squares."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self):
        return False

    def __repr__(self):
        return "NotASquare"


NOT_A_SQUARE = NotASquare()


def _sqrt_rational(c):
    c = Fraction(c)
    if c < 0:
        return None
    n, d = math.isqrt(c.numerator), math.isqrt(c.denominator)
    if n * n != c.numerator or d * d != c.denominator:
        return None
    return _norm(Fraction(n, d))


def _sqrt_rec(f):
    if not f:
        return MultiPoly()
    names = f.variables()
    if not names:
        r = _sqrt_rational(f.constant_value())
        return None if r is None else MultiPoly.const(r)
    top = names[0]
    coeffs = f.coefficients_in(top)
    deg = max(coeffs)
    low = min(coeffs)
    if deg % 2 or low % 2:
        return None
    half = deg // 2
    lead = _sqrt_rec(coeffs[deg])
    if lead is None:
        return None
    y = MultiPoly.var(top)
    two_lead = lead * 2
    # g = sum g_j y^j, g_half = lead; solve downward from the second-highest coefficient
    g = {half: lead}
    for j in range(half - 1, low // 2 - 1, -1):
        k = half + j
        acc = coeffs.get(k, MultiPoly())
        for i in range(j + 1, half):
            if i in g and (k - i) in g and k - i > j:
                acc = acc - g[i] * g[k - i]
        try:
            gj = acc.exact_div(two_lead)
        except NotDivisible:
            return None
        if gj:
            g[j] = gj
    root = MultiPoly()
    for j, c in g.items():
        root = root + c * y ** j
    if root * root != f:
        return None
    return root


def poly_square_root(f):
    """``g`` with ``g*g == f`` (positive leading coefficient), else ``NOT_A_SQUARE``."""
    f = MultiPoly.coerce(f)
    if not f:
        raise ValueError("poly_square_root of the zero polynomial")
    g = _sqrt_rec(f)
    if g is None:
        return NOT_A_SQUARE
    if g.leading_coefficient() < 0:
        g = -g
    return g


# -- text format ---------------------------------------------------------------

def format_poly(p):
    if not p.terms:
        return "0"
    parts = []
    for exps, c in p.items():
        c = Fraction(c)
        mono = "*".join(name if e == 1 else f"{name}^{e}" for name, e in
                        sorted(exps.items(), key=lambda t: _INDEX[t[0]]))
        mag = abs(c)
        cs = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
        if mono:
            body = mono if mag == 1 else f"{cs}*{mono}"
        else:
            body = cs
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = []
        for m in _TOKEN.finditer(text):
            if m.group(0).strip() == "":
                continue
            if m.group(1):
                self.tokens.append(("num", int(m.group(1)), m.start(1)))
            elif m.group(2):
                self.tokens.append(("name", m.group(2), m.start(2)))
            else:
                self.tokens.append(("op", m.group(3), m.start(3)))
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", None, len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def expr(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            out = self.term()
            if tok[1] == "-":
                out = -out
        else:
            out = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self):
        out = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            rhs = self.factor()
            if op == "*":
                out = out * rhs
            else:
                if not (isinstance(rhs, MultiPoly) and rhs.is_constant() and rhs):
                    self.fail("division only by nonzero constants", self.tokens[self.i - 1])
                out = out / rhs.constant_value()
        return out

    def factor(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "num":
                self.fail("expected integer exponent", tok)
            base = base ** tok[1]
        return base

    def atom(self):
        tok = self.take()
        if tok[0] == "num":
            return MultiPoly.const(tok[1])
        if tok[0] == "name":
            return MultiPoly.var(tok[1])
        if tok[0] == "op" and tok[1] == "(":
            out = self.expr()
            if self.take()[1] != ")":
                self.fail("expected ')'", self.tokens[self.i - 1] if self.i <= len(self.tokens) else None)
            return out
        if tok[0] == "op" and tok[1] == "-":
            return -self.factor()
        self.fail("unexpected token", tok)


def parse_poly(text):
    """Parse ``x^4 - 4*x^3 + 38*x^2 - 4*x + 33`` style text into a MultiPoly."""
    p = _Parser(text)
    if not p.tokens:
        raise ParseError("empty polynomial", text, 0)
    out = p.expr()
    if p.peek()[0] != "end":
        p.fail("unexpected trailing input")
    return out


def parse_unipoly(text, var=None):
    """Parse a univariate polynomial: coefficient list ``[1,-4,38,-4,33]`` or expression."""
    from .arith import parse_rational

    s = text.strip()
    if s.startswith("["):
        if not s.endswith("]"):
            raise ParseError("unterminated coefficient list", text, len(text))
        body = s[1:-1]
        coeffs = []
        offset = text.index("[") + 1
        for item in body.split(","):
            stripped = item.strip()
            try:
                coeffs.append(parse_rational(stripped))
            except ParseError:
                raise ParseError("malformed coefficient", text, offset + item.find(stripped[:1] or " ")) from None
            offset += len(item) + 1
        return UniPoly(coeffs, var or "X")
    p = parse_poly(text)
    names = p.variables()
    if len(names) > 1:
        raise ParseError(f"expected a univariate polynomial, found variables {names}", text, 0)
    name = var or (names[0] if names else "X")
    uni = p.to_unipoly(name)
    return UniPoly([c.constant_value() for c in uni.coeffs], "X" if var is None else var)
