"""Brute-force ground truth for sums of dilates.

Exhaustive searches over Z/pZ use affine symmetry: |A + t.A| is unchanged by
A -> uA + v (u a unit), and every set with at least two elements has an
affine image containing {0, 1}.  Enumerating only those images is exact for
the minimum; witnesses are reported in canonical form.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from .bounds import (
    INTEGER_RULES,
    f_t,
    integer_reference_bound,
    theorem1_bound,
    w_constant,
)
from .errors import DomainError, InfeasibleEnumeration, RuleNotApplicable, UnknownConstant
from .residue_core import (
    IntegerSet,
    ResidueSet,
    canonical_form,
    elements_from_mask,
    integer_sum_of_dilates,
    is_prime,
    sumset_mask,
)

__all__ = [
    "BoundCheck",
    "SearchReport",
    "Violation",
    "VerificationReport",
    "ConjectureRow",
    "ConjectureTable",
    "DEFAULT_LIMIT",
    "count_reduced_subsets",
    "exhaustive_min_sumset_modp",
    "sample_min_sumset_modp",
    "exhaustive_min_sumset_integers",
    "verify_theorem1",
    "conjecture1_explorer",
    "random_subset",
]

DEFAULT_LIMIT = 2_000_000
WITNESS_CAP = 50
EXHAUSTIVE_P_MAX = 25


@dataclass(frozen=True)
class BoundCheck:
    name: str
    value: float
    satisfied: bool
    attained: bool


@dataclass(frozen=True)
class SearchReport:
    p: int | str  # "integers" on the integer side
    t: int
    k: int
    min_sumset_size: int
    witnesses: tuple[tuple[int, ...], ...]
    sets_examined: int
    bound_comparisons: tuple[BoundCheck, ...] = ()
    wall_time: float = 0.0
    exact: bool = True
    witnesses_truncated: bool = False
    diameter_cap: int | None = None

    @property
    def deficiency(self) -> int | None:
        if isinstance(self.p, int) and self.min_sumset_size >= self.p:
            return None
        return max(0, (abs(self.t) + 1) * self.k - self.min_sumset_size)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["witnesses"] = [list(w) for w in self.witnesses]
        d["deficiency"] = self.deficiency
        return d

    @classmethod
    def from_dict(cls, d: Mapping) -> "SearchReport":
        kw = {k: v for k, v in d.items() if k != "deficiency"}
        kw["witnesses"] = tuple(tuple(w) for w in d["witnesses"])
        kw["bound_comparisons"] = tuple(BoundCheck(**b) for b in d["bound_comparisons"])
        return cls(**kw)

    def csv_row(self) -> dict:
        return {"p": self.p, "t": self.t, "k": self.k, "min": self.min_sumset_size,
                "deficiency": "" if self.deficiency is None else self.deficiency,
                "witnesses_truncated": int(self.witnesses_truncated),
                "sets_examined": self.sets_examined, "seconds": f"{self.wall_time:.6f}"}


def _check(name: str, value: float, observed: int) -> BoundCheck:
    return BoundCheck(name, value, observed >= value - 1e-9, abs(observed - value) < 1e-9)


# -- Z/pZ -----------------------------------------------------------------------

def count_reduced_subsets(p: int, k: int) -> int:
    if k <= 2:
        return 1
    return math.comb(p - 2, k - 2)


def _partition_modp(args) -> tuple[int, list[tuple[int, ...]], int, bool]:
    """Min over one partition.  ``prefix`` is fixed, the rest is drawn from ``pool``."""
    p, t, prefix, pool, r, cap = args
    best = p + 1
    found: dict[tuple[int, ...], None] = {}
    truncated = False
    examined = 0
    for rest in combinations(pool, r):
        els = prefix + rest
        size = sumset_mask(els, t, p).bit_count()
        examined += 1
        if size < best:
            best = size
            found = {}
            truncated = False
        if size == best:
            if len(found) < cap:
                found[canonical_form(ResidueSet(p, els)).elements] = None
            else:
                truncated = True
    return best, sorted(found), examined, truncated


def _merge(parts, cap):
    best = min(b for b, *_ in parts)
    wit: set[tuple[int, ...]] = set()
    truncated = False
    examined = 0
    for b, ws, n, tr in parts:
        examined += n
        if b == best:
            wit.update(ws)
            truncated |= tr
    ws = sorted(wit)
    if len(ws) > cap:
        ws, truncated = ws[:cap], True
    return best, tuple(ws), examined, truncated


def _run(tasks, threads: int):
    if threads <= 1 or len(tasks) <= 1:
        return [_partition_modp(a) for a in tasks]
    with ProcessPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(_partition_modp, tasks))


def _modp_bounds(p: int, t: int, k: int, observed: int, w_table) -> tuple[BoundCheck, ...]:
    checks = [_check("cauchy_davenport", min(2 * k - 1, p), observed)]
    try:
        checks.append(_check("theorem1", theorem1_bound(p, k, t, w_table), observed))
    except UnknownConstant:
        pass
    return tuple(checks)


def exhaustive_min_sumset_modp(p: int, t: int, k: int, *, reduce: bool = True,
                               threads: int = 1, limit: int = DEFAULT_LIMIT,
                               witness_cap: int = WITNESS_CAP,
                               w_table: Mapping[int, int] | None = None) -> SearchReport:
    """Exact min of |A + t.A| over all k-subsets of Z/pZ.

    With ``reduce`` (default) only sets containing {0, 1} are enumerated,
    partitioned by their third element; ``reduce=False`` walks every
    k-subset, partitioned by the smallest element, and exists as the
    cross-check for the reduction.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if not 1 <= k <= p:
        raise DomainError(f"k must lie in [1, {p}]")
    t0 = time.perf_counter()
    if reduce:
        estimated = count_reduced_subsets(p, k)
        if estimated > limit:
            raise InfeasibleEnumeration(f"p={p}, k={k}: too many orbit representatives", estimated)
        if k == 1:
            tasks = [(p, t, (0,), (), 0, witness_cap)]
        elif k == 2:
            tasks = [(p, t, (0, 1), (), 0, witness_cap)]
        else:
            tasks = [(p, t, (0, 1, j), tuple(range(j + 1, p)), k - 3, witness_cap)
                     for j in range(2, p - k + 3)]
    else:
        estimated = math.comb(p, k)
        if estimated > limit:
            raise InfeasibleEnumeration(f"p={p}, k={k}: too many subsets", estimated)
        tasks = [(p, t, (j,), tuple(range(j + 1, p)), k - 1, witness_cap)
                 for j in range(0, p - k + 1)]
    best, ws, examined, truncated = _merge(_run(tasks, threads), witness_cap)

    for w in ws:  # re-verify every witness
        assert sumset_mask(w, t, p).bit_count() == best, w
    if k == 1:
        assert best == 1
    if k == 2:
        assert best == len({0, 1, t % p, (1 + t) % p})
    return SearchReport(p, t, k, best, ws, examined, _modp_bounds(p, t, k, best, w_table),
                        time.perf_counter() - t0, True, truncated)


def random_subset(rng: np.random.Generator, p: int, k: int) -> tuple[int, ...]:
    """Uniform k-subset of range(p) by a partial Fisher-Yates shuffle."""
    return tuple(sorted(int(v) for v in rng.choice(p, size=k, replace=False, shuffle=False)))


def sample_min_sumset_modp(p: int, t: int, k: int, n: int, seed: int = 0, *,
                           witness_cap: int = WITNESS_CAP,
                           w_table: Mapping[int, int] | None = None) -> SearchReport:
    """Min over n random k-subsets.  An upper bound on the true minimum (exact=False)."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    best, found = p + 1, {}
    for _ in range(n):
        els = random_subset(rng, p, k)
        size = sumset_mask(els, t, p).bit_count()
        if size < best:
            best, found = size, {}
        if size == best and len(found) < witness_cap:
            found[canonical_form(ResidueSet(p, els)).elements] = None
    ws = tuple(sorted(found))
    return SearchReport(p, t, k, best, ws, n, _modp_bounds(p, t, k, best, w_table),
                        time.perf_counter() - t0, False, False)


# -- integers ---------------------------------------------------------------------

def _integer_bounds(t: int, k: int, observed: int, w_table) -> tuple[BoundCheck, ...]:
    out = []
    for rule in INTEGER_RULES:
        try:
            out.append(_check(rule, integer_reference_bound(t, k, rule, w_table), observed))
        except RuleNotApplicable:
            pass
    return tuple(out)


def exhaustive_min_sumset_integers(k: int, t: int, diameter_cap: int | None = None, *,
                                   limit: int = DEFAULT_LIMIT, witness_cap: int = WITNESS_CAP,
                                   w_table: Mapping[int, int] | None = None) -> SearchReport:
    """Min of |A + t.A| over integer sets with min 0 and max <= diameter_cap.

    A capped search: the result is the true minimum only if some minimizer
    has diameter <= cap.  The cap (default 3k) is recorded in the report.
    """
    if k < 1:
        raise DomainError("k must be at least 1")
    cap = 3 * k if diameter_cap is None else diameter_cap
    if k > cap + 1:
        raise DomainError(f"no {k}-set fits in [0, {cap}]")
    estimated = math.comb(cap, k - 1)
    if estimated > limit:
        raise InfeasibleEnumeration(f"k={k}, cap={cap}", estimated)
    t0 = time.perf_counter()
    best, found, truncated, examined = math.inf, [], False, 0
    for rest in combinations(range(1, cap + 1), k - 1):
        A = IntegerSet((0,) + rest)
        size = len(integer_sum_of_dilates(A, t))
        examined += 1
        if size < best:
            best, found, truncated = size, [], False
        if size == best:
            if len(found) < witness_cap:
                found.append(A.elements)
            else:
                truncated = True
    for w in found:
        assert len(integer_sum_of_dilates(IntegerSet(w), t)) == best
    return SearchReport("integers", t, k, int(best), tuple(found), examined,
                        _integer_bounds(t, k, int(best), w_table), time.perf_counter() - t0,
                        True, truncated, cap)


# -- bound verification -----------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    elements: tuple[int, ...]
    sumset_size: int
    bound: float


@dataclass(frozen=True)
class VerificationReport:
    p: int
    t: int
    mode: str
    sets_checked: int
    violations: tuple[Violation, ...]
    min_slack: float
    min_slack_set: tuple[int, ...]
    wall_time: float = 0.0
    seed: int | None = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        d = asdict(self)
        d["min_slack_set"] = list(self.min_slack_set)
        d["violations"] = [{"elements": list(v.elements), "sumset_size": v.sumset_size,
                            "bound": v.bound} for v in self.violations]
        d["ok"] = self.ok
        return d

    @classmethod
    def from_dict(cls, d: Mapping) -> "VerificationReport":
        kw = {k: v for k, v in d.items() if k != "ok"}
        kw["min_slack_set"] = tuple(d["min_slack_set"])
        kw["violations"] = tuple(Violation(tuple(v["elements"]), v["sumset_size"], v["bound"])
                                 for v in d["violations"])
        return cls(**kw)


def _masks_exhaustive(p: int, reduce: bool) -> Iterable[int]:
    if not reduce:
        yield from range(1, 1 << p)
        return
    yield 1  # singletons form one orbit
    for rest in range(1 << (p - 2)):
        yield 0b11 | (rest << 2)


def verify_theorem1(p: int, t: int, mode: str = "exhaustive", *, n: int = 10_000,
                    seed: int = 42, max_size: int | None = None, reduce: bool = False,
                    w_table: Mapping[int, int] | None = None) -> VerificationReport:
    """Check |A + t.A| >= min(f_|t|(|A|/p)|A| - w(t), p) for every (or n random) A.

    Sampling draws |A| uniformly from [1, max_size] (default min(p, 256)),
    then a uniform subset of that size.  ``reduce`` restricts the exhaustive
    walk to sets containing {0, 1} plus one singleton, which is exact by
    affine invariance.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    w_constant(t, w_table)
    bounds = [0.0] + [theorem1_bound(p, k, t, w_table) for k in range(1, p + 1)]
    t0 = time.perf_counter()
    violations: list[Violation] = []
    slack, slack_set, checked = math.inf, (), 0

    def consider(els: tuple[int, ...]):
        nonlocal slack, slack_set, checked
        checked += 1
        size = sumset_mask(els, t, p).bit_count()
        s = size - bounds[len(els)]
        if s < slack:
            slack, slack_set = s, els
        if s < -1e-9:
            violations.append(Violation(els, size, bounds[len(els)]))

    if mode == "exhaustive":
        if p > EXHAUSTIVE_P_MAX:
            raise InfeasibleEnumeration(f"exhaustive check at p={p}", (1 << p) - 1)
        for mask in _masks_exhaustive(p, reduce):
            consider(elements_from_mask(mask))
        used_seed = None
    elif mode == "sample":
        rng = np.random.default_rng(seed)
        top = min(p, 256) if max_size is None else min(p, max_size)
        for _ in range(n):
            k = int(rng.integers(1, top + 1))
            consider(random_subset(rng, p, k))
        used_seed = seed
    else:
        raise DomainError(f"unknown mode {mode!r}")
    return VerificationReport(p, t, mode, checked, tuple(violations), float(slack), slack_set,
                              time.perf_counter() - t0, used_seed)


# -- Conjecture 1 explorer ------------------------------------------------------------

@dataclass(frozen=True)
class ConjectureRow:
    k: int
    min_size: int
    deficiency: int | None  # None when the min is capped at p
    exact: bool
    degenerate: bool  # k = 1: deficiency |t| is an artifact of tiny sets


@dataclass(frozen=True)
class ConjectureTable:
    p: int
    t: int
    rows: tuple[ConjectureRow, ...]

    @property
    def running_max(self) -> list[int]:
        out, cur = [], 0
        for r in self.rows:
            if r.deficiency is not None and not r.degenerate:
                cur = max(cur, r.deficiency)
            out.append(cur)
        return out

    @property
    def c_candidate(self) -> int:
        """Empirical lower bound on c(t) from the non-degenerate rows."""
        return self.running_max[-1] if self.rows else 0

    def to_dict(self) -> dict:
        return {"p": self.p, "t": self.t, "rows": [asdict(r) for r in self.rows],
                "c_candidate": self.c_candidate}

    @classmethod
    def from_dict(cls, d: Mapping) -> "ConjectureTable":
        return cls(d["p"], d["t"], tuple(ConjectureRow(**r) for r in d["rows"]))


def conjecture1_explorer(p: int, t: int, k_range: Sequence[int], *, fallback_samples: int = 0,
                         seed: int = 0, threads: int = 1,
                         limit: int = DEFAULT_LIMIT) -> ConjectureTable:
    """Per-k minimum of |A + t.A| and the deficiency (|t|+1)k - min.

    Infeasible k raise unless ``fallback_samples`` > 0, in which case that
    many random sets are tried and the row is marked inexact.
    """
    rows = []
    for k in k_range:
        try:
            rep = exhaustive_min_sumset_modp(p, t, k, threads=threads, limit=limit)
        except InfeasibleEnumeration:
            if fallback_samples <= 0:
                raise
            rep = sample_min_sumset_modp(p, t, k, fallback_samples, seed + k)
        rows.append(ConjectureRow(k, rep.min_sumset_size, rep.deficiency, rep.exact, k == 1))
    return ConjectureTable(p, t, tuple(rows))
