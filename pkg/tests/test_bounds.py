import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dilates.bounds import (
    BoundProfile,
    bound_profile,
    concentration_M,
    critical_density,
    f_t,
    f_t_inverse_density,
    f_t_residual,
    integer_reference_bound,
    sinc_g,
    sinc_g_inverse,
    theorem1_bound,
    theorem2_bound,
    w_constant,
)
from dilates.errors import BracketFailure, DomainError, RuleNotApplicable, UnknownConstant
from dilates import bounds

# 40-digit mpmath evaluations of the closed forms, frozen
F2_AT_0 = 2.080083823051904
F_AT_001 = {2: 2.051536531658444, 4: 2.024212381480010, 5: 2.052631171846350, 7: 2.081673496756660}
F_AT_0 = {4: 2.052876547158786, 5: 2.082790483664363, 7: 2.113405435242828}
F_LIMIT = 2.154095813878930      # root of x^(3/2) sin(pi/x) = pi
C0_LIMIT = 0.04984184192144697   # 1/2 - sqrt(2)/pi
C_AT_208 = 2.906070736553015e-05  # (1 - 2.08^(3/2)/3)/2.08
M_TERM_SINC_1_3_06 = 0.5499137706879889


def test_sinc_examples():
    assert sinc_g(math.pi / 2) == pytest.approx(2 / math.pi, abs=1e-15)
    assert sinc_g(math.pi / 4) == pytest.approx(2 * math.sqrt(2) / math.pi, abs=1e-15)
    assert sinc_g(math.pi) == 0.0
    for bad in (0.0, -1.0, 4.0):
        with pytest.raises(DomainError):
            sinc_g(bad)


def test_sinc_inverse_examples():
    assert sinc_g_inverse(0.0) == math.pi
    assert sinc_g_inverse(2 / math.pi) == pytest.approx(math.pi / 2, abs=1e-12)
    assert sinc_g_inverse(sinc_g(1.0)) == pytest.approx(1.0, abs=1e-10)
    for bad in (1.0, -0.1, 2.0):
        with pytest.raises(DomainError):
            sinc_g_inverse(bad)


def test_sinc_round_trip_grid():
    for y in np.linspace(0, 0.999, 1000):
        assert abs(sinc_g(sinc_g_inverse(float(y))) - y) <= 1e-10


def test_sinc_strictly_decreasing():
    u = np.linspace(1e-3, math.pi, 2000)
    vals = [sinc_g(float(x)) for x in u]
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_critical_density_values():
    assert critical_density(2) == pytest.approx(0.028595479208968, abs=1e-12)
    assert critical_density(-2) == critical_density(2)
    assert critical_density(3) == 0.0
    assert critical_density(10**7) == pytest.approx(C0_LIMIT, abs=1e-4)
    for t in range(2, 50):
        assert 0 <= critical_density(t) < 0.5
    for t in (0, 1, -1):
        with pytest.raises(DomainError):
            critical_density(t)


def test_f_t_values():
    assert f_t(2, 0.0) == pytest.approx(3 ** (2 / 3), rel=1e-12)
    assert f_t(2, 0.0) == pytest.approx(F2_AT_0, abs=1e-12)
    assert f_t(2, critical_density(2)) == 2.0
    assert f_t(2, C_AT_208) == pytest.approx(2.08, abs=1e-6)
    assert f_t(10**7, 0.0) == pytest.approx(F_LIMIT, abs=1e-4)
    for t, v in F_AT_001.items():
        assert f_t(t, 0.01) == pytest.approx(v, rel=1e-12)
    for t, v in F_AT_0.items():
        assert f_t(t, 0.0) == pytest.approx(v, rel=1e-12)


def test_f_t_negative_t_uses_abs():
    assert f_t(-2, 0.001) == f_t(2, 0.001)
    assert f_t(-5, 0.01) == f_t(5, 0.01)


def test_f_t_t3_is_two():
    for c in (0.0, 1e-6, 0.1, 1.0):
        assert f_t(3, c) == 2.0
    assert "no improvement" in bound_profile(3, 0.1).note


def test_f_t_domain():
    with pytest.raises(DomainError):
        f_t(1, 0.0)
    with pytest.raises(DomainError):
        f_t(2, -0.1)
    with pytest.raises(DomainError):
        f_t(2, 1.5)


@pytest.mark.parametrize("t", range(2, 11))
def test_f_t_monotone_and_piecewise(t):
    c0 = critical_density(t)
    grid = np.linspace(0, 1, 1000)
    vals = [f_t(t, float(c)) for c in grid]
    assert all(b <= a for a, b in zip(vals, vals[1:]))
    for c, v in zip(grid, vals):
        assert v >= 2.0
        if c >= c0:
            assert v == 2.0
        else:
            assert v > 2.0


@pytest.mark.parametrize("t", [2, 4, 5, 6, 7, 8, 9, 10, 25])
def test_f_t_residual(t):
    c0 = critical_density(t)
    for c in np.linspace(0, c0, 50, endpoint=False):
        x = f_t(t, float(c))
        lhs, rhs = f_t_residual(t, float(c), x)
        assert abs(lhs - rhs) <= 1e-10 * abs(rhs)


def test_bisect_asserts_bracket():
    with pytest.raises(BracketFailure):
        bounds.bisect(lambda x: x * x + 1, -1.0, 1.0)


def test_inverse_density():
    assert f_t_inverse_density(2, 2.08) == pytest.approx(C_AT_208, rel=1e-12)
    assert 1 / f_t_inverse_density(2, 2.08) == pytest.approx(34410.7, abs=0.05)
    assert f_t_inverse_density(2, 2.0) == pytest.approx(critical_density(2), abs=1e-15)
    assert f_t_inverse_density(2, f_t(2, 0.0)) == pytest.approx(0.0, abs=1e-14)
    with pytest.raises(DomainError):
        f_t_inverse_density(2, 1.9)
    with pytest.raises(DomainError):
        f_t_inverse_density(2, 2.2)


@given(st.sampled_from([2, 4, 5, 7, 10]), st.floats(0, 1))
def test_inverse_density_round_trip(t, frac):
    c = frac * critical_density(t)
    x = f_t(t, c)
    assert f_t_inverse_density(t, x) == pytest.approx(c, abs=1e-9)


def test_concentration_examples():
    for beta in (0.05, 0.2, 1 / 3, 0.5):
        b = concentration_M(beta, 1.0)
        assert b.M == 1.0 and b.term_cosine == pytest.approx(1.0) and b.term_sinc == 1.0
    b = concentration_M(0.2, 0.0)
    assert b.term_sinc == pytest.approx(0.2, abs=1e-15) and b.M == pytest.approx(0.2)
    b = concentration_M(1 / 3, 0.6)
    assert b.term_cosine == pytest.approx(0.6, abs=1e-14)
    assert b.term_sinc == pytest.approx(M_TERM_SINC_1_3_06, abs=1e-12)
    assert b.M == max(b.term_cosine, b.term_sinc)
    for beta, eta in ((0.0, 0.5), (0.6, 0.5), (0.3, -0.1), (0.3, 1.1)):
        with pytest.raises(DomainError):
            concentration_M(beta, eta)


@given(st.floats(1e-3, 0.5), st.floats(0, 1), st.floats(0, 1))
def test_concentration_monotone_in_eta(beta, e1, e2):
    lo, hi = sorted((e1, e2))
    assert concentration_M(beta, lo).M <= concentration_M(beta, hi).M + 1e-12


def test_w_constant():
    assert w_constant(2) == 2
    assert w_constant(-3) == 4
    assert w_constant(4) == 10
    with pytest.raises(UnknownConstant):
        w_constant(5)
    assert w_constant(5, {5: 9}) == 9
    assert w_constant(-5, {5: 9}) == 9


def test_theorem1_bound():
    p = 1000003
    assert theorem1_bound(p, 10, 2) == pytest.approx(f_t(2, 10 / p) * 10 - 2, abs=1e-12)
    assert theorem1_bound(p, 10, 2) == pytest.approx(18.80, abs=0.01)
    assert theorem1_bound(11, 4, 2) == 6.0
    assert theorem1_bound(7, 7, 2) == 7.0
    with pytest.raises(UnknownConstant):
        theorem1_bound(101, 3, 6)
    assert theorem2_bound(p, 10, 2, 0.0) == pytest.approx(f_t(2, 10 / p) * 10)


def test_integer_reference_bounds():
    assert integer_reference_bound(2, 3, "trivial3") == 7
    assert integer_reference_bound(3, 3, "exact_t3") == 8
    assert integer_reference_bound(3, 4, "nathanson") == 12
    assert integer_reference_bound(3, 3, "nathanson") == 8   # ceil(8)
    with pytest.raises(RuleNotApplicable):
        integer_reference_bound(3, 2, "nathanson")
    assert integer_reference_bound(5, 3, "prime_t") == 18 - 9  # ceil(35/4) = 9
    assert integer_reference_bound(3, 3, "prime_t") == 12 - 4  # ceil(15/4) = 4
    assert integer_reference_bound(4, 3, "universal") == 5
    with pytest.raises(RuleNotApplicable):
        integer_reference_bound(2, 3, "nathanson")
    with pytest.raises(RuleNotApplicable):
        integer_reference_bound(4, 3, "exact_t3")
    with pytest.raises(RuleNotApplicable):
        integer_reference_bound(4, 3, "prime_t")
    with pytest.raises(RuleNotApplicable):
        integer_reference_bound(6, 3, "universal")
    with pytest.raises(RuleNotApplicable):
        integer_reference_bound(2, 3, "bukh")


def test_profile_round_trip():
    prof = bound_profile(2, 1e-4)
    assert BoundProfile.from_dict(prof.to_dict()) == prof
    assert prof.theorem_bound(50, 500000) == pytest.approx(prof.f_value * 50 - 2)
    assert prof.theta == pytest.approx(prof.f_value - 2)
    assert bound_profile(6, 0.01).w is None
