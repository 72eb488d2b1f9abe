"""Bound functions for |A + t.A| in Z/pZ.

Everything here is a pure function of (t, c) or (beta, eta).  Roots of the
transcendental equations are found by bisection on brackets whose sign
change is asserted first.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable, Mapping

from .errors import BracketFailure, DomainError, RuleNotApplicable, UnknownConstant
from .residue_core import is_prime

__all__ = [
    "BUILTIN_W",
    "BoundProfile",
    "ConcentrationBound",
    "bisect",
    "sinc_g",
    "sinc_g_inverse",
    "leading_constant",
    "critical_density",
    "f_t",
    "f_t_residual",
    "f_t_inverse_density",
    "concentration_M",
    "w_constant",
    "theorem1_bound",
    "theorem2_bound",
    "integer_reference_bound",
    "bound_profile",
    "INTEGER_RULES",
]

MAX_ITER = 200
ABS_TOL = 1e-13

# |A + t.A| >= (1+t)|A| - w(t) over the integers, for every non-empty A.
BUILTIN_W: dict[int, int] = {2: 2, 3: 4, 4: 10}


def bisect(h: Callable[[float], float], lo: float, hi: float, tol: float = ABS_TOL) -> float:
    """Root of ``h`` on [lo, hi].  Requires h(lo), h(hi) of opposite sign (or zero)."""
    hlo, hhi = h(lo), h(hi)
    if hlo == 0.0:
        return lo
    if hhi == 0.0:
        return hi
    if (hlo > 0) == (hhi > 0):
        raise BracketFailure(f"no sign change on [{lo}, {hi}]: h={hlo}, {hhi}")
    for _ in range(MAX_ITER):
        mid = 0.5 * (lo + hi)
        hmid = h(mid)
        if hmid == 0.0:
            return mid
        if (hmid > 0) == (hlo > 0):
            lo, hlo = mid, hmid
        else:
            hi = mid
        if hi - lo <= tol:
            break
    return 0.5 * (lo + hi)


# -- g(u) = sin(u)/u ----------------------------------------------------------

def sinc_g(u: float) -> float:
    if not 0.0 < u <= math.pi:
        raise DomainError(f"g is defined on (0, pi], got {u}")
    if u == math.pi:
        return 0.0
    return math.sin(u) / u


def sinc_g_inverse(y: float) -> float:
    """The unique u in (0, pi] with g(u) = y, for y in [0, 1)."""
    if not 0.0 <= y < 1.0:
        raise DomainError(f"g^-1 is defined on [0, 1), got {y}")
    if y <= math.sin(math.pi) / math.pi:  # below float resolution of g near pi
        return math.pi
    # g is decreasing: g(u) - y goes from (1 - y) > 0 near 0 to -y < 0 at pi
    return bisect(lambda u: (math.sin(u) / u if u > 0 else 1.0) - y, 0.0, math.pi)


# -- c_t^(0) and f_t ---------------------------------------------------------

def _check_t(t: int) -> int:
    if abs(t) <= 1:
        raise DomainError(f"|t| must be at least 2, got {t}")
    return abs(t)


def leading_constant(t: int) -> float:
    """(|t|+1) sin(pi/(|t|+1)); equals 3 for |t| = 2 where the sine factor is dropped."""
    a = _check_t(t)
    if a == 2:
        return 3.0
    return (a + 1) * math.sin(math.pi / (a + 1))


def _rhs(t: int, x: float) -> float:
    if abs(t) == 2:
        return x ** 1.5
    return x ** 1.5 * math.sin(math.pi / x)


def critical_density(t: int) -> float:
    """c_t^(0): the density above which f_t is identically 2."""
    lead = leading_constant(t)
    return max(0.0, 0.5 * (1.0 - 2.0 ** 1.5 / lead))


def _x_upper(t: int) -> float:
    # c = 0 root: 3^(2/3) for |t| = 2; below 2.16 for |t| >= 3 since lead < pi
    if abs(t) == 2:
        return 3.0 ** (2.0 / 3.0)
    if critical_density(t) == 0.0:
        return 2.0
    lead = leading_constant(t)
    return bisect(lambda x: lead - _rhs(t, x), 2.0, 4.0, tol=1e-15)


def f_t(t: int, c: float) -> float:
    """f_|t|(c): the root x >= 2 of L_t (1 - c x) = RHS_t(x), or 2 when c >= c_t^(0)."""
    lead = leading_constant(t)
    if not 0.0 <= c <= 1.0:
        raise DomainError(f"density must lie in [0, 1], got {c}")
    if c >= critical_density(t):
        return 2.0
    h = lambda x: lead * (1.0 - c * x) - _rhs(t, x)
    if h(2.0) <= 0.0:
        return 2.0
    # pad past the c = 0 root so roundoff at c ~ 0 cannot erase the sign change
    return bisect(h, 2.0, _x_upper(t) + 1e-9)


def f_t_residual(t: int, c: float, x: float) -> tuple[float, float]:
    """(LHS, RHS) of the defining equation at x."""
    return leading_constant(t) * (1.0 - c * x), _rhs(t, x)


def f_t_inverse_density(t: int, x_target: float) -> float:
    """The density c with f_t(c) = x_target.  The equation is linear in c."""
    lead = leading_constant(t)
    x0 = _x_upper(t)
    if not 2.0 <= x_target <= x0 + 1e-10:
        raise DomainError(f"x_target must lie in [2, {x0}], got {x_target}")
    x = min(x_target, x0)
    return max(0.0, (1.0 - _rhs(t, x) / lead) / x)


# -- Lev's concentration bound ------------------------------------------------

@dataclass(frozen=True)
class ConcentrationBound:
    beta: float
    eta: float
    term_cosine: float
    term_sinc: float
    M: float


def concentration_M(beta: float, eta: float) -> ConcentrationBound:
    if not 0.0 < beta <= 0.5:
        raise DomainError(f"beta must lie in (0, 1/2], got {beta}")
    if not 0.0 <= eta <= 1.0:
        raise DomainError(f"eta must lie in [0, 1], got {eta}")
    cos_pb = math.cos(math.pi * beta)
    term_cos = (eta + 1.0 - 2.0 * cos_pb) / (2.0 * (1.0 - cos_pb))
    if eta == 1.0:
        term_sinc = 1.0
    else:
        term_sinc = math.pi * beta / sinc_g_inverse(eta * sinc_g(math.pi * beta))
    return ConcentrationBound(beta, eta, term_cos, term_sinc, max(term_cos, term_sinc))


# -- w(t) and the theorem bounds -----------------------------------------------

def w_constant(t: int, w_table: Mapping[int, int] | None = None) -> int:
    """w(|t|) from the built-in table, extended (never overridden silently) by ``w_table``."""
    a = abs(t)
    if w_table and a in w_table:
        return int(w_table[a])
    if a in BUILTIN_W:
        return BUILTIN_W[a]
    raise UnknownConstant(f"no w({a}) known; supply one via w_table")


def theorem1_bound(p: int, size_a: int, t: int, w_table: Mapping[int, int] | None = None) -> float:
    """min(f_|t|(|A|/p) |A| - w(t), p)."""
    if size_a < 1:
        raise DomainError("theorem bound needs |A| >= 1")
    w = w_constant(t, w_table)
    return min(f_t(t, size_a / p) * size_a - w, float(p))


def theorem2_bound(p: int, size_a: int, t: int, eps: float) -> float:
    """min((f_|t|(c) - eps)|A|, p).  No claim is made about the threshold p_0(eps)."""
    if size_a < 1:
        raise DomainError("theorem bound needs |A| >= 1")
    return min((f_t(t, size_a / p) - eps) * size_a, float(p))


INTEGER_RULES = ("trivial3", "nathanson", "exact_t3", "prime_t", "universal")


def integer_reference_bound(t: int, k: int, rule: str, w_table: Mapping[int, int] | None = None) -> int:
    if k < 1:
        raise DomainError("k must be at least 1")
    a = abs(t)
    if a <= 1:
        raise RuleNotApplicable(f"no dilate bound for |t| = {a}")
    if rule == "trivial3":
        return 3 * k - 2
    if rule == "nathanson":
        if a < 3:
            raise RuleNotApplicable("nathanson needs |t| >= 3")
        if k < 3:
            # {0, 1} has |A + t.A| = 4 < ceil(4.5)
            raise RuleNotApplicable("nathanson needs |A| >= 3")
        return (7 * k - 5 + 1) // 2
    if rule == "exact_t3":
        if a != 3:
            raise RuleNotApplicable("exact_t3 needs |t| = 3")
        return 4 * k - 4
    if rule == "prime_t":
        if not is_prime(a):
            raise RuleNotApplicable(f"prime_t needs |t| prime, got {t}")
        return (1 + a) * k - (a * (a + 2) + 3) // 4
    if rule == "universal":
        try:
            return (1 + a) * k - w_constant(t, w_table)
        except UnknownConstant as exc:
            raise RuleNotApplicable(str(exc)) from exc
    raise RuleNotApplicable(f"unknown rule {rule!r}")


# -- profile record -------------------------------------------------------------

@dataclass(frozen=True)
class BoundProfile:
    t: int
    c: float
    critical_density: float
    f_value: float
    w: int | None
    note: str = ""

    def theorem_bound(self, size_a: int, p: int) -> float:
        if self.w is None:
            raise UnknownConstant(f"no w({abs(self.t)}) in this profile")
        return min(self.f_value * size_a - self.w, float(p))

    @property
    def theta(self) -> float:
        return self.f_value - 2.0

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: Mapping) -> "BoundProfile":
        return cls(**{k: d[k] for k in ("t", "c", "critical_density", "f_value", "w", "note")})


def bound_profile(t: int, c: float, w_table: Mapping[int, int] | None = None) -> BoundProfile:
    try:
        w = w_constant(t, w_table)
    except UnknownConstant:
        w = None
    c0 = critical_density(t)
    note = ""
    if abs(t) == 3:
        note = "no improvement for |t| = 3: bound not better than Cauchy-Davenport"
    elif c >= c0:
        note = "c >= c_t^(0): f = 2, Cauchy-Davenport regime"
    return BoundProfile(t, c, c0, f_t(t, c), w, note)
