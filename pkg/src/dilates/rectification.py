"""Rectification and the end-to-end replay of the lower-bound argument.

``run_proof_pipeline`` walks a concrete set through the chain

    |S| = x|A| - w  ->  Fourier bias >= ((1 - xc)/sqrt(x))|A|
        ->  normalize bias to frequency 1  ->  best window of diameter
            floor(p/(|t|+1))  ->  |A_0| >= B_t(x, c)|A|
        ->  A_0 lifted to Z has the same sumset size
        ->  |A_0 + t.A_0| >= (|t|+1)|A_0| - w  ->  x >= (|t|+1) B_t(x, c)

and records a verdict for every inequality.  Nothing is assumed: a step
whose bound is non-positive is labelled ``vacuous``, anything else is
checked against the observed numbers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Mapping

from .bounds import concentration_M, critical_density, f_t, integer_reference_bound, w_constant
from .errors import ElementOutsideWindow, EmptyInput
from .fourier import dilation_parameter, indicator_dft, normalize_bias_to_one
from .lev import IntervalWindow, best_interval, window_length
from .residue_core import (
    IntegerSet,
    ResidueSet,
    cauchy_davenport_bound,
    integer_sum_of_dilates,
    make_residue_set,
    sum_of_dilates,
)

__all__ = [
    "StepRecord",
    "PipelineTrace",
    "RectificationResult",
    "lift_to_integers",
    "rectification_check",
    "run_proof_pipeline",
]

HOLDS, FAILS, VACUOUS, SKIPPED = "holds", "fails", "vacuous", "skipped"
_TOL = 1e-9


def lift_to_integers(A0: ResidueSet, window: IntervalWindow) -> IntegerSet:
    """Map each residue to its representative in [start, start + L - 1] (unwrapped)."""
    out = []
    for a in A0.elements:
        off = window.offset(a)
        if off < 0:
            raise ElementOutsideWindow(f"{a} is not in window start={window.start} L={window.length}")
        out.append(window.start + off)
    return IntegerSet(tuple(sorted(out)))


@dataclass(frozen=True)
class RectificationResult:
    isomorphic: bool
    residue_size: int
    integer_size: int
    guaranteed: bool  # (1+|t|)(L-1) < p

    def __iter__(self):
        return iter((self.isomorphic, self.residue_size, self.integer_size))


def rectification_check(A0: ResidueSet, t: int, window: IntervalWindow) -> RectificationResult:
    if not A0.elements:
        raise EmptyInput("rectification needs a non-empty set")
    lifted = lift_to_integers(A0, window)
    r = len(sum_of_dilates(A0, t))
    z = len(integer_sum_of_dilates(lifted, t))
    guaranteed = (1 + abs(t)) * (window.length - 1) < A0.modulus
    return RectificationResult(r == z, r, z, guaranteed)


@dataclass(frozen=True)
class StepRecord:
    name: str
    inputs: dict
    value: Any
    bound: Any
    verdict: str

    def to_dict(self) -> dict:
        return {"name": self.name, "inputs": self.inputs, "value": self.value,
                "bound": self.bound, "verdict": self.verdict}


def _ineq(name, inputs, value, bound, vacuous=False) -> StepRecord:
    if vacuous:
        verdict = VACUOUS
    else:
        verdict = HOLDS if value >= bound - _TOL * max(1.0, abs(bound)) else FAILS
    return StepRecord(name, inputs, value, bound, verdict)


@dataclass(frozen=True)
class PipelineTrace:
    A: ResidueSet
    t: int
    S_size: int
    x: float
    c: float
    short_circuit: bool
    unit: int | None = None
    normalized: ResidueSet | None = None
    eta_at_1: float | None = None
    eta_bound: float | None = None
    beta: float | None = None
    window: IntervalWindow | None = None
    A0: ResidueSet | None = None  # subset of ``normalized``
    A0_lift: IntegerSet | None = None
    B_value: float | None = None
    borninf_holds: bool | None = None
    notes: tuple[StepRecord, ...] = field(default=())

    @property
    def verdicts(self) -> dict[str, str]:
        return {s.name: s.verdict for s in self.notes}

    @property
    def failures(self) -> list[StepRecord]:
        return [s for s in self.notes if s.verdict == FAILS]

    @property
    def A0_original(self) -> ResidueSet | None:
        """A_0 mapped back into the input set (undoing the normalizing dilation)."""
        if self.A0 is None:
            return None
        inv = pow(self.unit, -1, self.A.modulus)
        return make_residue_set(self.A.modulus, (inv * a for a in self.A0.elements))

    def to_dict(self) -> dict:
        def lit(s):
            return None if s is None else list(s.elements)
        return {
            "p": self.A.modulus, "A": lit(self.A), "t": self.t, "S_size": self.S_size,
            "x": self.x, "c": self.c, "short_circuit": self.short_circuit,
            "unit": self.unit, "normalized": lit(self.normalized),
            "eta_at_1": self.eta_at_1, "eta_bound": self.eta_bound, "beta": self.beta,
            "window": None if self.window is None else self.window.to_dict(),
            "A0": lit(self.A0), "A0_lift": lit(self.A0_lift),
            "B_value": self.B_value, "borninf_holds": self.borninf_holds,
            "steps": [s.to_dict() for s in self.notes],
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "PipelineTrace":
        p = d["p"]

        def rs(v):
            return None if v is None else ResidueSet(p, tuple(v))
        return cls(
            A=rs(d["A"]), t=d["t"], S_size=d["S_size"], x=d["x"], c=d["c"],
            short_circuit=d["short_circuit"], unit=d["unit"], normalized=rs(d["normalized"]),
            eta_at_1=d["eta_at_1"], eta_bound=d["eta_bound"], beta=d["beta"],
            window=None if d["window"] is None else IntervalWindow(**d["window"]),
            A0=rs(d["A0"]), A0_lift=None if d["A0_lift"] is None else IntegerSet(tuple(d["A0_lift"])),
            B_value=d["B_value"], borninf_holds=d["borninf_holds"],
            notes=tuple(StepRecord(**s) for s in d["steps"]),
        )


def run_proof_pipeline(A: ResidueSet, t: int, beta: float | None = None,
                       w_table: Mapping[int, int] | None = None,
                       dft_method: str = "auto", force_chain: bool = False) -> PipelineTrace:
    """Replay the lower-bound argument on ``A``.

    ``beta`` defaults to 1/(|t|+1) with a window of diameter p // (|t|+1);
    other values are for experimentation and void the rectification
    guarantee (the check is still run and reported honestly).  Sets denser
    than c_t^(0) short-circuit to the Cauchy-Davenport branch unless
    ``force_chain`` is set.
    """
    if not A.elements:
        raise EmptyInput("pipeline needs a non-empty set")
    p, k, a = A.modulus, len(A), abs(t)
    w = w_constant(t, w_table)
    S = sum_of_dilates(A, t)
    x = dilation_parameter(k, len(S), t, w_table)
    c = k / p
    steps: list[StepRecord] = []

    c0 = critical_density(t)
    if c > c0 and not force_chain:
        steps.append(_ineq("cauchy_davenport", {"sizeA": k, "p": p},
                           len(S), cauchy_davenport_bound(k, k, p)))
        steps.append(_ineq("theorem1", {"sizeA": k, "p": p, "c0": c0},
                           len(S), min(f_t(t, c) * k - w, p)))
        return PipelineTrace(A, t, len(S), x, c, True, notes=tuple(steps))

    spectrum = indicator_dft(A, dft_method)
    normalized, unit = normalize_bias_to_one(A, spectrum)
    eta1 = spectrum.bias / k
    eta_bound = (1.0 - x * c) / math.sqrt(x)
    steps.append(_ineq("fourier_bias", {"x": x, "c": c}, spectrum.bias, eta_bound * k,
                       vacuous=eta_bound <= 0))

    if beta is None:
        beta = 1.0 / (a + 1)
        L = p // (a + 1) + 1
    else:
        L = window_length(beta, p)
    window = best_interval(normalized, L)
    A0 = window.intersect(normalized)

    lev = concentration_M(beta, min(eta1, 1.0))
    steps.append(_ineq("lev_lemma", {"beta": beta, "eta": eta1, "L": L},
                       window.count, lev.M * k))

    vacuous = eta_bound <= 0
    B = concentration_M(beta, eta_bound).M if not vacuous else None
    steps.append(_ineq("concentration", {"beta": beta, "eta_bound": eta_bound},
                       len(A0), None if vacuous else B * k, vacuous=vacuous))

    lifted = lift_to_integers(A0, window)
    rect = rectification_check(A0, t, window)
    steps.append(StepRecord("rectification", {"L": L, "guaranteed": rect.guaranteed},
                            rect.residue_size, rect.integer_size,
                            HOLDS if rect.isomorphic else (FAILS if rect.guaranteed else VACUOUS)))
    steps.append(_ineq("integer_bound", {"sizeA0": len(A0), "w": w}, rect.integer_size,
                       integer_reference_bound(t, len(A0), "universal", w_table)))
    steps.append(_ineq("sumset_monotone", {}, len(S), rect.residue_size))

    borninf = None
    if not vacuous:
        step = _ineq("borninf", {"B": B}, x, (a + 1) * B)
        borninf = step.verdict == HOLDS
        steps.append(step)
    else:
        steps.append(StepRecord("borninf", {"B": None}, x, None, VACUOUS))

    return PipelineTrace(A, t, len(S), x, c, False, unit, normalized, eta1, eta_bound, beta,
                         window, A0, lifted, B, borninf, tuple(steps))
