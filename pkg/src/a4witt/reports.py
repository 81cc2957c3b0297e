"""Structured verification results."""

from dataclasses import dataclass, field
from fractions import Fraction

PASS, FAIL, SKIPPED, ERROR = "pass", "fail", "skipped", "error"


@dataclass
class ClaimReport:
    claim: str
    status: str
    witness: dict = field(default_factory=dict)
    anchor: str = ""

    @property
    def passed(self):
        return self.status == PASS

    def __bool__(self):
        return self.passed

    def to_json(self):
        out = {"claim": self.claim, "status": self.status, "witness": jsonable(self.witness)}
        if self.anchor:
            out["anchor"] = self.anchor
        return out


def identity_report(claim, lhs, rhs, anchor="", **extra):
    """Compare two exact values; on failure keep both canonical forms as the witness."""
    holds = not (lhs - rhs)
    witness = dict(extra)
    if not holds:
        witness.update(lhs=str(lhs), rhs=str(rhs))
    return ClaimReport(claim, PASS if holds else FAIL, witness, anchor)


def jsonable(x):
    """Convert to JSON-ready data; every number becomes a "p/q" string."""
    from .arith import BrauerClass, Place, format_rational

    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, (int, Fraction)):
        return format_rational(x)
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, str):
        return x
    if isinstance(x, BrauerClass):
        return x.to_json()
    if isinstance(x, Place):
        return str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return x.to_json()
    return str(x)
