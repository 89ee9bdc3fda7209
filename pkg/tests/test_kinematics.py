import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from numpy.testing import assert_allclose, assert_array_equal

from lorelast.errors import NotADiffeomorphism, PolarUndefined
from lorelast.fields import TrigField, ZeroField
from lorelast.kinematics import (deformation_gradient, invariants, invariants_from_power_sums,
                                 linearization_report, polar_decompose, pullback_metric, strain,
                                 volume_residual)
from lorelast.solutions import (canonical_massive, canonical_massless, massive_displacement,
                                massless_displacement)
from lorelast.tensor_core import MINKOWSKI, boost, eigenvalues, random_lorentz

G = MINKOWSKI.components

phases = st.floats(-10, 10, allow_nan=False)


def massless_D_closed_form(a, th, s=1):
    """Deformation gradient of the canonical massless wave, written out entrywise."""
    D = np.eye(4)
    D[0, 2] = D[0, 3] = -a * math.sin(th)
    D[1, 2] = D[1, 3] = s * a * math.cos(th)
    return D


def massless_S_closed_form(a, th, s=1):
    sn, cs = a * math.sin(th), s * a * math.cos(th)
    return np.array([[0, 0, -sn, -sn],
                     [0, 0, cs, cs],
                     [-sn, cs, a * a, a * a],
                     [sn, -cs, -a * a, -a * a]])


def massive_S_closed_form(m, a, b, x4):
    c = 4 * m * m * (a * a + b * b)
    w = [-2 * m * a * math.sin(2 * m * x4), 2 * m * a * math.cos(2 * m * x4), 2 * m * b]
    S = np.zeros((4, 4))
    S[:3, 3] = w
    S[3, :3] = [-v for v in w]
    S[3, 3] = -c
    return S


def test_zero_field_gives_identity():
    x = np.zeros((3, 4))
    assert_array_equal(deformation_gradient(ZeroField(), x), np.broadcast_to(np.eye(4), (3, 4, 4)))


def test_deformation_gradient_rejects_folding():
    A = TrigField([[-2j, 0, 0, 0]], [[1, 0, 0, 0]])   # A^1 = 2 sin x^1
    with pytest.raises(NotADiffeomorphism):
        deformation_gradient(A, np.array([[math.pi, 0, 0, 0]]))


@pytest.mark.parametrize("s", [1, -1])
@given(th=phases)
def test_massless_matrices_match_closed_form(s, th):
    a = 0.7
    A = massless_displacement(canonical_massless(a, s))
    x = np.array([0.3, -1.1, th - 0.2, 0.2])
    D = deformation_gradient(A, x)
    assert_allclose(D, massless_D_closed_form(a, th, s), atol=1e-14)
    assert_allclose(strain(D), massless_S_closed_form(a, th, s), atol=1e-14)
    assert_allclose(pullback_metric(D) - G, G @ massless_S_closed_form(a, th, s), atol=1e-14)


def test_massless_D_at_origin_example():
    D = deformation_gradient(massless_displacement(canonical_massless(1.0)), np.zeros(4))
    assert_allclose(D[:, 2], [0, 1, 1, 0], atol=1e-15)
    assert_allclose(D[:, 3], [0, 1, 0, 1], atol=1e-15)


@given(x4=phases)
def test_massive_strain_matches_closed_form(x4):
    m, a, b = 0.8, 0.3, -0.2
    c = 4 * m * m * (a * a + b * b)
    A = massive_displacement(canonical_massive(m, c, b))
    x = np.array([1.0, 2.0, -0.5, x4])
    D = deformation_gradient(A, x)
    assert_allclose(D[:3, 3], massive_S_closed_form(m, a, b, x4)[:3, 3], atol=1e-14)
    assert_allclose(strain(D), massive_S_closed_form(m, a, b, x4), atol=1e-14)


def test_strain_trivial_cases():
    assert_array_equal(strain(np.eye(4)), 0)
    assert_allclose(strain(math.sqrt(2) * np.eye(4)), np.eye(4), atol=1e-15)
    L = random_lorentz(np.random.default_rng(1))
    assert_allclose(pullback_metric(L), G, atol=1e-12)


def test_invariants_examples():
    assert_array_equal(invariants(np.zeros((4, 4))), 0)
    S = massless_S_closed_form(1.3, 0.4)
    assert_allclose(invariants(S), 0, atol=1e-15)
    assert_allclose(S @ S @ S, 0, atol=1e-14)
    assert np.abs(S @ S).max() > 0.1
    m, a, b = 1.0, 0.4, 0.3
    c = 4 * (a * a + b * b)
    assert_allclose(invariants(massive_S_closed_form(m, a, b, 0.9)), [-c, c, 0, 0], atol=1e-15)


@pytest.mark.parametrize("S, expected", [
    (np.zeros((4, 4)), 0.0),
    (massive_S_closed_form(1.0, 0.4, 0.3, 0.5), 0.0),
    (np.diag([1.0, 0, 0, 0]), 1.0),
])
def test_volume_residual(S, expected):
    assert volume_residual(S) == pytest.approx(expected, abs=1e-15)


def test_power_sum_route_agrees(rng):
    D = np.eye(4) + 0.4 * rng.standard_normal((200, 4, 4))
    S = strain(D)
    assert_allclose(np.stack(invariants(S)), np.stack(invariants_from_power_sums(S)), atol=1e-11)


def test_massive_eigenvalues_c1():
    lam = eigenvalues(massive_S_closed_form(1.0, 0.4, 0.3, 0.2))
    expected = [-0.5 - 1j * math.sqrt(3) / 2, -0.5 + 1j * math.sqrt(3) / 2, 0, 0]
    assert_allclose(sorted(lam, key=lambda z: (z.real, z.imag)), expected, atol=1e-12)


def test_massive_c4_double_root():
    m, b = 1.0, 0.0
    S = massive_S_closed_form(m, 1.0, b, 0.0)
    lam = np.asarray(eigenvalues(S), complex)
    assert_allclose(sorted(lam.real), [-2, -2, 0, 0], atol=1e-7)
    # non-diagonalizable: S + 2 has rank 3
    assert np.linalg.matrix_rank(S + 2 * np.eye(4), tol=1e-8) == 3


def test_polar_identity():
    P = polar_decompose(np.eye(4))
    assert_allclose(P.U, np.eye(4))
    assert_allclose(P.V, np.eye(4))
    assert_allclose(P.F, 0, atol=1e-15)


def test_polar_of_lorentz_map_is_pure_rotation(rng):
    L = boost([0.2, 0.1, 1.0], 0.4) @ random_lorentz(rng, 0.3)
    P = polar_decompose(L)
    assert_allclose(P.U, L, atol=1e-10)
    assert_allclose(P.V, np.eye(4), atol=1e-10)


@given(th=phases)
def test_polar_massless_closed_forms(th):
    a = 0.9
    A = massless_displacement(canonical_massless(a))
    x = np.array([0, 0, th, 0.0])
    P = polar_decompose(deformation_gradient(A, x))
    p_up, p_lo = np.array([0, 0, 1.0, -1]), np.array([0, 0, 1.0, 1])
    u_up = a * np.array([1, -1j, 0, 0])
    u_lo = G @ u_up
    ph = np.exp(1j * th)
    U = np.eye(4) - 0.5 * np.real(1j * (np.outer(p_up, u_lo) - np.outer(u_up, p_lo)) * ph) \
        - (2 * a * a / 16) * np.outer(p_up, p_lo)
    V = np.eye(4) + 0.5 * np.real(1j * (np.outer(p_up, u_lo) + np.outer(u_up, p_lo)) * ph) \
        + (3 * 2 * a * a / 16) * np.outer(p_up, p_lo)
    assert_allclose(P.U, U, atol=1e-10)
    assert_allclose(P.V, V, atol=1e-10)
    assert_allclose(P.U @ P.V, deformation_gradient(A, x), atol=1e-12)


def test_polar_undefined_for_c4():
    A = massive_displacement(canonical_massive(1.0, 4.0))
    with pytest.raises(PolarUndefined):
        polar_decompose(deformation_gradient(A, np.zeros(4)))


def test_polar_undefined_for_reflection_like_rotation():
    R = np.diag([-1.0, -1.0, 1.0, 1.0])   # rotation by pi, log not principal
    with pytest.raises(PolarUndefined):
        polar_decompose(R)


def test_linearization_report_slopes(rng):
    J = rng.standard_normal((4, 4))
    slopes, errs = linearization_report(J)
    assert slopes["D"] == math.inf
    for k in ("U", "F", "V", "S", "det"):
        assert 1.8 <= slopes[k] <= 2.2, k


def test_linearization_report_zero_field():
    slopes, errs = linearization_report(np.zeros((4, 4)))
    for e in errs.values():
        assert_array_equal(e, 0)
