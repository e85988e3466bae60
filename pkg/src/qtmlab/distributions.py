"""Output distributions and the total-variation distance.

A distribution maps outcome labels (bit strings or configuration
digests) to probabilities.  In exact mode probabilities are Fractions
and must sum to exactly 1; in float mode a 1e-12 completeness tolerance
applies.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .errors import ValidationError

MASS_TOL = 1e-12

UNHALTED = "!unhalted"  # reserved label for residual (non-halted) mass


class OutputDistribution:
    """Finite probability distribution over outcome labels."""

    __slots__ = ("support", "exact")

    def __init__(self, support: dict, exact: bool | None = None):
        if exact is None:
            exact = all(isinstance(p, Rational) for p in support.values())
        cleaned = {}
        for label, p in support.items():
            if exact:
                p = Fraction(p)
                if p < 0:
                    raise ValidationError(f"negative probability for {label!r}")
            else:
                p = float(p)
                if p < -MASS_TOL:
                    raise ValidationError(f"negative probability for {label!r}")
                p = max(p, 0.0)
            if p != 0:
                cleaned[label] = p
        self.support = cleaned
        self.exact = exact

    def total_mass(self):
        if self.exact:
            return sum(self.support.values(), Fraction(0))
        return float(sum(self.support.values()))

    def is_complete(self) -> bool:
        mass = self.total_mass()
        if self.exact:
            return mass == 1
        return abs(mass - 1.0) <= MASS_TOL

    def require_complete(self) -> None:
        if not self.is_complete():
            raise ValidationError(
                f"distribution mass {self.total_mass()} is not 1 "
                f"({'exact' if self.exact else 'float'} mode)"
            )

    def __getitem__(self, label):
        if label in self.support:
            return self.support[label]
        return Fraction(0) if self.exact else 0.0

    def __eq__(self, other) -> bool:
        if not isinstance(other, OutputDistribution):
            return NotImplemented
        labels = set(self.support) | set(other.support)
        return all(self[x] == other[x] for x in labels)

    def __hash__(self):
        return hash(frozenset(self.support.items()))

    def __repr__(self) -> str:
        mode = "exact" if self.exact else "float"
        return f"OutputDistribution({self.support!r}, {mode})"

    def to_json(self) -> dict:
        if self.exact:
            probs = {
                k: [p.numerator, p.denominator] for k, p in sorted(self.support.items())
            }
        else:
            probs = {k: float(p) for k, p in sorted(self.support.items())}
        return {"mode": "exact" if self.exact else "float", "probabilities": probs}

    @classmethod
    def from_json(cls, obj: dict) -> "OutputDistribution":
        exact = obj["mode"] == "exact"
        probs = obj["probabilities"]
        if exact:
            support = {k: Fraction(v[0], v[1]) for k, v in probs.items()}
        else:
            support = {k: float(v) for k, v in probs.items()}
        return cls(support, exact=exact)


def tvd(p: OutputDistribution, q: OutputDistribution):
    """Total-variation distance 1/2 sum_x |P(x) - Q(x)|.

    Exact when both inputs are exact; otherwise float with error well
    below 1e-12 for desk-scale supports.
    """
    p.require_complete()
    q.require_complete()
    labels = set(p.support) | set(q.support)
    if p.exact and q.exact:
        return sum((abs(p[x] - q[x]) for x in labels), Fraction(0)) / 2
    return 0.5 * float(sum(abs(float(p[x]) - float(q[x])) for x in labels))
