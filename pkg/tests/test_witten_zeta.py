from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from oracles import harmonic
from ymbrauer.algebra_core import ExactScalar
from ymbrauer.witten_zeta import (
    DivergenceError,
    ZetaQuery,
    charge_truncated_zeta,
    enumerate_su_classes,
    large_n_epsilon,
    su_truncated_sum,
    theta,
    theta_charged,
    u_truncated_sum,
    v_coefficients,
    zeta,
)


def test_trivial_group():
    res = zeta(ZetaQuery("SU", Fraction(2), 1, 10))
    assert res.partial_sum == ExactScalar(1)
    assert res.tail_bound == 0


def test_su2_reduces_to_riemann_zeta():
    # SU(2) dimensions run over the positive integers exactly once
    res = zeta(ZetaQuery("SU", Fraction(2), 2, 50))
    assert res.partial_sum.as_fraction() == sum(Fraction(1, d * d) for d in range(1, 52))
    with mpmath.workdps(40):
        gap = mpmath.pi**2 / 6 - mpmath.mpf(res.partial_sum.as_fraction().numerator) / res.partial_sum.as_fraction().denominator
        assert 0 <= gap <= res.tail_bound


def test_large_n_value_close_to_one():
    res = zeta(ZetaQuery("SU", Fraction(2), 6, 12))
    eps = large_n_epsilon(6, Fraction(2))
    assert 1 < res.partial_float() <= res.upper() < 1 + eps


def test_u_group_requires_damping():
    with pytest.raises(DivergenceError):
        ZetaQuery("U", Fraction(2), 3, 5)


def test_bad_group_name():
    with pytest.raises(ValueError):
        ZetaQuery("SO", Fraction(2), 3, 5)


def test_no_certificate_for_small_exponent():
    with pytest.raises(DivergenceError):
        zeta(ZetaQuery("SU", Fraction(1, 2), 4, 5))


@pytest.mark.parametrize("N", [2, 3, 4])
def test_monotone_in_cutoff(N):
    prev = None
    for k in range(0, 9, 2):
        res = zeta(ZetaQuery("SU", Fraction(4), N, k))
        if prev is not None:
            assert res.partial_float() >= prev.partial_float()
            assert res.tail_bound <= prev.tail_bound
        prev = res


@pytest.mark.parametrize("N", [3, 4])
def test_certificate_brackets_longer_sum(N):
    s = Fraction(3)
    short = zeta(ZetaQuery("SU", s, N, 4))
    extra = su_truncated_sum(N, s, None, 4, 14)
    assert short.partial_float() + extra <= short.upper()


def test_enumeration_counts_each_class_once():
    classes = list(enumerate_su_classes(3, 4))
    assert len(classes) == len(set(classes))


def test_v_coefficients_examples():
    assert v_coefficients(2) == [ExactScalar(1)]
    for N in range(2, 11):
        vs = v_coefficients(N)
        assert len(vs) == N - 1
        assert vs[0].as_fraction() == harmonic(N - 1)
        assert vs == vs[::-1]


def test_v_coefficients_need_two():
    with pytest.raises(ValueError):
        v_coefficients(1)


def test_theta_small_q():
    assert abs(theta(1e-8) - 1) < 1e-6


def test_theta_charged_value():
    direct = sum(mpmath.mpf(0.5) ** (n * n) for n in range(-30, 31))
    assert abs(theta_charged(0.5, 0) - direct) < 1e-12
    assert abs(theta_charged(0.5, 0) - mpmath.mpf("2.128936827211877")) < 1e-12


@given(st.floats(min_value=0.05, max_value=0.95), st.floats(min_value=-2, max_value=2))
@settings(max_examples=50, deadline=None)
def test_theta_charged_symmetric(q, x):
    assert abs(theta_charged(q, x) - theta_charged(q, -x)) <= 1e-12 * theta_charged(q, x)


def test_theta_range():
    with pytest.raises(ValueError):
        theta(1.5)


@pytest.mark.parametrize("c", [1, 2, 3])
def test_truncation_charge_bound(c):
    # charges of absolute value at least c + 2
    s, q = Fraction(2), 0.5
    lhs = charge_truncated_zeta(4, s, q, 1, c + 1, 8)
    rhs = mpmath.mpf(q) ** (c * c) / (c * mpmath.log(1 / mpmath.mpf(q))) * su_truncated_sum(4, s, q, 1, 8)
    assert lhs <= rhs


@pytest.mark.parametrize("N, q", [(3, 0.5), (4, 0.5), (4, 0.8), (5, 0.3)])
def test_u_su_comparison(N, q):
    s = Fraction(2)
    assert u_truncated_sum(N, s, q, 1, 7) <= theta(q) * su_truncated_sum(N, s, q, 1, 7)


def test_u_zeta_includes_charge_factor():
    res_u = zeta(ZetaQuery("U", Fraction(2), 3, 6, q=0.5))
    res_su = zeta(ZetaQuery("SU", Fraction(2), 3, 6, q=0.5))
    assert res_su.partial_float() < res_u.partial_float() <= theta(0.5) * res_su.partial_float()
