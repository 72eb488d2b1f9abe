import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dilates.bounds import concentration_M
from dilates.errors import DomainError, EmptyInput
from dilates.fourier import eta_at_one
from dilates.lev import (
    IntervalWindow,
    LevReport,
    RemarkOutcome,
    best_interval,
    lev_guarantee_check,
    remark_dichotomy,
    remark_violations,
    window_length,
)
from dilates.residue_core import make_residue_set

from conftest import all_subsets, residue_sets


def naive_best(A, L):
    p = A.modulus
    counts = [sum(((s + i) % p) in A for i in range(L)) for s in range(p)]
    best = max(counts)
    return counts.index(best), best


def test_best_interval_examples():
    w = best_interval(make_residue_set(11, [0, 1, 2, 7]), 3)
    assert (w.start, w.count, w.length) == (0, 3, 3)
    A = make_residue_set(13, [2, 5, 11])
    assert best_interval(A, 13).count == 3
    assert best_interval(make_residue_set(13, [0, 6]), 1).count == 1


def test_best_interval_wraps():
    w = best_interval(make_residue_set(11, [9, 10, 0, 5]), 3)
    assert (w.start, w.count) == (9, 3)
    assert w.residues() == [9, 10, 0]


def test_best_interval_errors():
    with pytest.raises(EmptyInput):
        best_interval(make_residue_set(7, []), 2)
    with pytest.raises(DomainError):
        best_interval(make_residue_set(7, [1]), 0)
    with pytest.raises(DomainError):
        best_interval(make_residue_set(7, [1]), 8)


@given(residue_sets(primes=[5, 7, 11, 13, 31, 101]), st.data())
def test_best_interval_is_true_max(A, data):
    L = data.draw(st.integers(1, A.modulus))
    w = best_interval(A, L)
    assert (w.start, w.count) == naive_best(A, L)
    assert w.count <= min(L, len(A))


@given(residue_sets(primes=[11, 13, 101]), st.integers(0, 500), st.data())
def test_best_count_translation_invariant(A, v, data):
    L = data.draw(st.integers(1, A.modulus))
    assert best_interval(A.translate(v), L).count == best_interval(A, L).count


@given(residue_sets(primes=[13, 101]))
def test_best_count_monotone_in_length(A):
    counts = [best_interval(A, L).count for L in range(1, A.modulus + 1)]
    assert all(b >= a for a, b in zip(counts, counts[1:]))
    assert counts[-1] == len(A)


def test_window_length():
    assert window_length(1 / 3, 7) == 3
    assert window_length(1 / 3, 12) == 5
    assert window_length(0.25, 13) == 4
    assert window_length(0.5, 2) == 2
    assert window_length(0.2, 5) == 2


def test_lev_interval_set_holds():
    p, k = 101, 20
    A = make_residue_set(p, range(k))
    for beta in (0.2, 0.25, 1 / 3, 0.5):
        rep = lev_guarantee_check(A, beta)
        assert rep.holds and rep.count == k


def test_lev_almost_full_group():
    A = make_residue_set(13, range(1, 13))
    rep = lev_guarantee_check(A, 0.5)
    holds, margin = rep
    assert holds and margin >= 0
    assert rep.eta == pytest.approx(1 / 12)
    assert rep.M == pytest.approx(concentration_M(0.5, 1 / 12).M)


def test_lev_report_round_trip():
    rep = lev_guarantee_check(make_residue_set(11, [0, 1, 4]), 1 / 3)
    assert LevReport.from_dict(rep.to_dict()) == rep


@pytest.mark.parametrize("p", [7, 11])
@pytest.mark.parametrize("beta", [1 / 3, 1 / 4, 1 / 5])
def test_lev_exhaustive_small(p, beta):
    for A in all_subsets(p):
        assert lev_guarantee_check(A, beta).holds, A


def test_floor_window_reading_fails():
    # The floor(beta p)-residue reading of the window breaks the guarantee; kept
    # as a regression witness for the floor(beta p) + 1 choice.
    A = make_residue_set(7, [0, 1])
    eta = eta_at_one(A)
    M = concentration_M(0.2, eta).M
    assert best_interval(A, math.floor(0.2 * 7)).count < M * len(A)
    assert best_interval(A, window_length(0.2, 7)).count >= M * len(A)


def test_remark_examples():
    assert remark_dichotomy(0.0, 0.2) is RemarkOutcome.NeitherTriggered
    out = remark_dichotomy(1 / math.sqrt(2), 0.26)
    assert out in (RemarkOutcome.CosineBranchImpliesBetaGeQuarter, RemarkOutcome.NeitherTriggered)
    assert remark_dichotomy(0.7, 0.1) is RemarkOutcome.SincBranchImpliesBetaLeQuarter
    with pytest.raises(DomainError):
        remark_dichotomy(0.8, 0.2)
    with pytest.raises(DomainError):
        remark_dichotomy(0.5, 0.4)
    with pytest.raises(DomainError):
        remark_dichotomy(0.5, 0.0)


@given(st.floats(0, 1 / math.sqrt(2)), st.floats(1e-4, 1 / 3))
def test_remark_never_violated(eta, beta):
    assert remark_violations(eta, beta) == []


def test_window_contains_and_offset():
    w = IntervalWindow(11, 9, 3, 0)
    assert 10 in w and 0 in w and 1 not in w
    assert w.offset(0) == 2
    with pytest.raises(DomainError):
        IntervalWindow(11, 0, 12, 0)
