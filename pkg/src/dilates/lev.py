"""Interval concentration: best cyclic windows and Lev's guarantee.

A window of "length beta*p" is taken to be ``floor(beta*p) + 1`` consecutive
residues, i.e. an arc whose endpoints are ``floor(beta*p)`` apart.  That is
the reading under which the guarantee ``|A & I| >= M(beta, eta)|A|`` holds
for every subset at small p (the ``floor(beta*p)``-residue reading fails
already at p = 7), and it is the diameter the rectification step needs.
"""
from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from .bounds import concentration_M, sinc_g, sinc_g_inverse
from .errors import DomainError, EmptyInput
from .fourier import eta_at_one
from .residue_core import ResidueSet

__all__ = [
    "IntervalWindow",
    "LevReport",
    "RemarkOutcome",
    "window_length",
    "best_interval",
    "window_counts",
    "lev_guarantee_check",
    "remark_dichotomy",
    "remark_violations",
]

_HOLDS_TOL = 1e-9


@dataclass(frozen=True)
class IntervalWindow:
    modulus: int
    start: int
    length: int
    count: int

    def __post_init__(self):
        if not 1 <= self.length <= self.modulus:
            raise DomainError(f"window length {self.length} outside [1, {self.modulus}]")

    def offset(self, x: int) -> int:
        """Position of residue x inside the window, or -1."""
        d = (x - self.start) % self.modulus
        return d if d < self.length else -1

    def __contains__(self, x: int) -> bool:
        return self.offset(x) >= 0

    def residues(self) -> list[int]:
        return [(self.start + i) % self.modulus for i in range(self.length)]

    def intersect(self, A: ResidueSet) -> ResidueSet:
        return ResidueSet(A.modulus, tuple(a for a in A.elements if a in self))

    def to_dict(self) -> dict:
        return asdict(self)


def _beta_fraction(beta: float | Fraction) -> Fraction:
    return Fraction(beta).limit_denominator(10**9)


def window_length(beta: float | Fraction, p: int) -> int:
    """floor(beta p) + 1 residues, capped at p."""
    return min(p, math.floor(_beta_fraction(beta) * p) + 1)


def window_counts(A: ResidueSet, L: int) -> np.ndarray:
    """|A & [s, s+L-1]| for every start s in 0..p-1 (cyclic)."""
    p = A.modulus
    ind = np.zeros(2 * p, dtype=np.int64)
    idx = np.asarray(A.elements, dtype=np.int64)
    ind[idx] = 1
    ind[idx + p] = 1
    csum = np.concatenate(([0], np.cumsum(ind)))
    s = np.arange(p)
    return csum[s + L] - csum[s]


def best_interval(A: ResidueSet, L: int) -> IntervalWindow:
    """Window of L consecutive residues maximizing |A & I|; smallest start on ties."""
    if not A.elements:
        raise EmptyInput("best interval of the empty set")
    if not 1 <= L <= A.modulus:
        raise DomainError(f"window length {L} outside [1, {A.modulus}]")
    counts = window_counts(A, L)
    start = int(np.argmax(counts))
    return IntervalWindow(A.modulus, start, L, int(counts[start]))


@dataclass(frozen=True)
class LevReport:
    p: int
    sizeA: int
    beta: float
    L: int
    start: int
    count: int
    eta: float
    M: float
    holds: bool
    margin: float

    def __iter__(self):
        # unpacks as (holds, margin)
        return iter((self.holds, self.margin))

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d) -> "LevReport":
        return cls(**d)


def lev_guarantee_check(A: ResidueSet, beta: float, eta: float | None = None) -> LevReport:
    """Compare the best window of length ~beta*p against M(beta, eta)|A|.

    ``eta`` defaults to |1_A^(1)|/|A|, the frequency-1 coefficient; normalize
    the set first if the bias sits elsewhere.
    """
    if not A.elements:
        raise EmptyInput("Lev check needs a non-empty set")
    if eta is None:
        eta = eta_at_one(A)
    L = window_length(beta, A.modulus)
    bound = concentration_M(float(beta), eta)
    win = best_interval(A, L)
    k = len(A)
    margin = win.count - bound.M * k
    return LevReport(A.modulus, k, float(beta), L, win.start, win.count, eta, bound.M,
                     margin >= -_HOLDS_TOL * k, margin)


class RemarkOutcome(enum.Enum):
    CosineBranchImpliesBetaGeQuarter = "cosine"
    SincBranchImpliesBetaLeQuarter = "sinc"
    BothTriggered = "both"
    NeitherTriggered = "neither"


def _remark_hypotheses(eta: float, beta: float) -> tuple[bool, bool]:
    if not 0.0 <= eta <= 1.0 / math.sqrt(2.0) + 1e-15:
        raise DomainError(f"eta must lie in [0, 1/sqrt(2)], got {eta}")
    if not 0.0 < beta <= 1.0 / 3.0 + 1e-15:
        raise DomainError(f"beta must lie in (0, 1/3], got {beta}")
    cosine = concentration_M(beta, eta).term_cosine / beta >= 2.0
    sinc = math.pi / sinc_g_inverse(eta * sinc_g(math.pi * beta)) >= 2.0
    return cosine, sinc


def remark_violations(eta: float, beta: float) -> list[str]:
    cosine, sinc = _remark_hypotheses(eta, beta)
    bad = []
    if cosine and not beta >= 0.25:
        bad.append("cosine branch fired with beta < 1/4")
    if sinc and not beta <= 0.25:
        bad.append("sinc branch fired with beta > 1/4")
    return bad


def remark_dichotomy(eta: float, beta: float) -> RemarkOutcome:
    cosine, sinc = _remark_hypotheses(eta, beta)
    assert not (cosine and beta < 0.25), (eta, beta)
    assert not (sinc and beta > 0.25), (eta, beta)
    if cosine and sinc:
        return RemarkOutcome.BothTriggered
    if cosine:
        return RemarkOutcome.CosineBranchImpliesBetaGeQuarter
    if sinc:
        return RemarkOutcome.SincBranchImpliesBetaLeQuarter
    return RemarkOutcome.NeitherTriggered
