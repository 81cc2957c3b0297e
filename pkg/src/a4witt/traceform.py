"""The trace form Tr(x^2) of Q[X]/(P) and its Hasse/Witt class."""

import enum
from dataclasses import dataclass
from fractions import Fraction

from .arith import BrauerClass, class_add, height, squarefree_part, symbol_class
from .errors import DegenerateForm, NoConventionMatches
from .reports import jsonable


class WittConvention(enum.Enum):
    HASSE = "HASSE"                                  # sum_{i<j} (d_i, d_j)
    HASSE_PLUS_MINUSONE = "HASSE_PLUS_MINUSONE"      # ... + (-1, -1)
    HASSE_PLUS_DISC = "HASSE_PLUS_DISC"              # ... + (-1, -disc)

    def __str__(self):
        return self.value


# Frozen by calibrate_convention against the closed-form obstruction; the
# calibration still runs in the test suite and via `a4witt calibrate`.
CALIBRATED_CONVENTION = WittConvention.HASSE


def _coeffs(P):
    """Ascending-index monic coefficients (a1, ..., an) of a quartic-like input."""
    if hasattr(P, "coeffs"):
        c = [Fraction(x) for x in P.coeffs]
        lead = c[0]
        return [x / lead for x in c[1:]]
    if hasattr(P, "a1"):
        return [Fraction(x) for x in P]
    c = [Fraction(x) for x in P]
    return [x / c[0] for x in c[1:]]


def power_sums(P, upto=6):
    """p_0..p_upto of the roots of the monic polynomial P via Newton's identities."""
    a = _coeffs(P)
    n = len(a)
    p = [Fraction(n)]
    for k in range(1, upto + 1):
        s = Fraction(0)
        for i in range(1, min(k, n + 1)):
            s += a[i - 1] * p[k - i]
        if k <= n:
            s += k * a[k - 1]
        p.append(-s)
    return p


@dataclass(frozen=True)
class GramMatrix:
    entries: tuple

    @property
    def size(self):
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def rows(self):
        return [list(r) for r in self.entries]

    def determinant(self):
        from .poly import bareiss_det

        return Fraction(bareiss_det(self.rows()))


def gram_matrix(P):
    """G[i][j] = Tr(x^(i+j)) on the basis 1, x, ..., x^(n-1)."""
    n = len(_coeffs(P))
    p = power_sums(P, 2 * n - 2)
    return GramMatrix(tuple(tuple(p[i + j] for j in range(n)) for i in range(n)))


@dataclass(frozen=True)
class DiagonalForm:
    """Diagonal entries, each reduced to its squarefree integer representative."""

    entries: tuple

    @property
    def signature(self):
        return sum(1 if d > 0 else -1 for d in self.entries)

    def discriminant_class(self):
        out = 1
        for d in self.entries:
            out *= d
        return squarefree_part(out)

    def to_json(self):
        return jsonable(list(self.entries))


def diagonalize(G):
    """Congruence-diagonalize a symmetric rational matrix; entries up to squares."""
    rows = G.rows() if isinstance(G, GramMatrix) else [list(map(Fraction, r)) for r in G]
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    remaining = list(range(n))
    diag = []
    while remaining:
        cands = [i for i in remaining if a[i][i] != 0]
        if not cands:
            pair = next(((i, j) for i in remaining for j in remaining if i != j and a[i][j] != 0), None)
            if pair is None:
                raise DegenerateForm("quadratic form is degenerate")
            i, j = pair
            # row_i += row_j and col_i += col_j gives a[i][i] = 2*a[i][j] != 0
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            cands = [i]
        piv = min(cands, key=lambda i: height(a[i][i]))
        d = a[piv][piv]
        remaining.remove(piv)
        for k in remaining:
            f = a[k][piv] / d
            if f:
                for m in range(n):
                    a[k][m] -= f * a[piv][m]
                for m in range(n):
                    a[m][k] -= f * a[m][piv]
        diag.append(d)
    return DiagonalForm(tuple(squarefree_part(d) for d in diag))


def hasse_class(d):
    out = BrauerClass()
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            out = class_add(out, symbol_class(d[i], d[j]))
    return out


def witt_class(form, conv=WittConvention.HASSE):
    d = form.entries if isinstance(form, DiagonalForm) else tuple(form)
    if any(x == 0 for x in d):
        raise DegenerateForm("zero diagonal entry")
    out = hasse_class(d)
    conv = WittConvention(conv)
    if conv is WittConvention.HASSE_PLUS_MINUSONE:
        out = class_add(out, symbol_class(-1, -1))
    elif conv is WittConvention.HASSE_PLUS_DISC:
        disc = 1
        for x in d:
            disc *= x
        out = class_add(out, symbol_class(-1, -disc))
    return out


def trace_form(P):
    """(Gram matrix, diagonal form) of Tr(x^2) on Q[X]/(P)."""
    G = gram_matrix(P)
    return G, diagonalize(G)


def trace_witt_class(P, conv=WittConvention.HASSE):
    return witt_class(trace_form(P)[1], conv)


@dataclass
class ConventionReport:
    selected: WittConvention
    agreement: dict
    samples: int

    def to_json(self):
        return {"selected": str(self.selected), "samples": self.samples,
                "agreement": {str(k): f"{v}/{self.samples}" for k, v in self.agreement.items()}}


def calibrate_convention(samples):
    """Pick the convention under which the trace-form class of the generic A4 quartic
    at (U, V) equals the closed-form obstruction class for every sample."""
    from .generic import obstruction_formula_class, prop1_quartic

    samples = list(samples)
    if not samples:
        raise ValueError("calibration needs at least one (U, V) sample")
    agreement = {conv: 0 for conv in WittConvention}
    for U, V in samples:
        expected = obstruction_formula_class(U, V)
        form = trace_form(prop1_quartic(U, V))[1]
        for conv in WittConvention:
            if witt_class(form, conv) == expected:
                agreement[conv] += 1
    full = [c for c, k in agreement.items() if k == len(samples)]
    if not full:
        raise NoConventionMatches(f"no Witt convention agrees on all samples: {agreement}")
    if len(full) > 1:
        raise NoConventionMatches(f"calibration is ambiguous between {[str(c) for c in full]}")
    return ConventionReport(full[0], agreement, len(samples))
