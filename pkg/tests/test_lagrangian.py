import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from numpy.testing import assert_allclose

from lorelast.errors import LorelastError, NoCriticalPoint
from lorelast.kinematics import invariants, power_sums
from lorelast.lagrangian import (HarmonicMapLagrangian, QuadraticLagrangian, check_condition1,
                                 find_critical_c, lame_parameters, power_sum_polynomial,
                                 reduce_lagrangian)

coef = st.floats(-3, 3, allow_nan=False).filter(lambda v: abs(v) > 1e-3)


def eval_poly(poly, p):
    return sum(float(c) * np.prod([p[k - 1] for k in part], axis=0) for part, c in poly.items())


@pytest.mark.parametrize("which, idx", [("e2", 1), ("e3", 2), ("e4", 3)])
def test_newton_polynomials_against_traces(rng, which, idx):
    S = rng.standard_normal((50, 4, 4))
    p = power_sums(S)
    assert_allclose(eval_poly(power_sum_polynomial(which), p), invariants(S)[idx], atol=1e-10)


@pytest.mark.parametrize("L", [QuadraticLagrangian(0.7, -1.3), HarmonicMapLagrangian()],
                         ids=["quadratic", "harmonic"])
def test_power_sum_terms_reproduce_value(rng, L):
    S = 0.5 * rng.standard_normal((30, 4, 4))
    p = power_sums(S)
    e = invariants(S)
    from_terms = sum(t.coef * np.prod([p[k - 1] for k in t.partition], axis=0) for t in L.power_sum_terms())
    assert_allclose(from_terms, L.value(e.e2, e.e3, e.e4), atol=1e-11)


def test_reduce_harmonic_map():
    L = reduce_lagrangian(lambda e1, e2, e3, e4: e1)
    ref = HarmonicMapLagrangian()
    for e in [(0.3, -0.2, 1.1), (0.0, 0.0, 0.0)]:
        assert L.value(*e) == pytest.approx(ref.value(*e))
        assert_allclose(L.gradient(*e), ref.gradient(*e), atol=1e-8)


def test_reduce_quadratic_density():
    al, be = 0.4, -1.5
    L = reduce_lagrangian(lambda e1, e2, e3, e4: al * e1 ** 2 + be * e2,
                          lambda e1, e2, e3, e4: (2 * al * e1, be, 0.0, 0.0))
    ref = QuadraticLagrangian(al, be)
    e = (0.3, 0.1, -0.4)
    assert L.value(*e) == pytest.approx(ref.value(*e))
    assert_allclose(L.gradient(*e), ref.gradient(*e), atol=1e-14)
    assert reduce_lagrangian(lambda *e: 0.0).value(1.0, 2.0, 3.0) == 0.0


@pytest.mark.parametrize("L, value, ok", [
    (QuadraticLagrangian(0.5, -1.0), -1.0, True),
    (QuadraticLagrangian(1.0, 2.0), 2.0, False),
    (HarmonicMapLagrangian(), -1.0, True),
])
def test_condition1(L, value, ok):
    c = check_condition1(L)
    assert c.value == value
    assert c.normalized is ok


def test_critical_c_example():
    assert find_critical_c(QuadraticLagrangian(0.5, -1.0)).c == pytest.approx(1.0, abs=1e-14)


@given(coef, coef)
def test_critical_c_quadratic_family(al, be):
    L = QuadraticLagrangian(al, be)
    cexp = -be / (2 * al)
    if 0 < cexp <= 1e3:
        assert find_critical_c(L).c == pytest.approx(cexp, rel=1e-12, abs=1e-14)
    elif al * be > 0:
        with pytest.raises(NoCriticalPoint):
            find_critical_c(L)


def test_no_critical_point_for_harmonic_map():
    with pytest.raises(NoCriticalPoint):
        find_critical_c(HarmonicMapLagrangian())


def test_critical_c_root_below_scan_step():
    L = QuadraticLagrangian(100.0, -1.0)        # c = 0.005 < default step
    assert find_critical_c(L).c == pytest.approx(0.005, rel=1e-12)


def test_smallest_of_several_roots():
    L = reduce_lagrangian(lambda e1, e2, e3, e4: -math.sin(e2) if np.ndim(e2) == 0 else -np.sin(e2))
    crit = find_critical_c(L, c_max=10)
    assert crit.c == pytest.approx(math.pi / 2, rel=1e-7)
    assert len(crit.roots) == 3


@pytest.mark.parametrize("al, be, expected", [
    (0.0, -2.0, (-2.0, 1.0, 1.0)),
    (1.0, -1.0, (1.0, 0.5, 1 / 3)),
])
def test_lame(al, be, expected):
    assert_allclose(lame_parameters(al, be), expected)


def test_lame_rejects_beta_zero():
    with pytest.raises(LorelastError):
        lame_parameters(1.0, 0.0)
