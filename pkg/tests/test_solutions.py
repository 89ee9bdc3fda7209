import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from numpy.testing import assert_allclose

from lorelast.errors import (ConstraintViolated, MassShellViolated, NotForward, NotIsotropic,
                             NotLightlike, NotOrthogonal, PolarUndefined)
from lorelast.field_equations import euler_lagrange
from lorelast.kinematics import deformation_gradient, invariants, polar_decompose, strain
from lorelast.lagrangian import QuadraticLagrangian
from lorelast.solutions import (canonical_frame_massive, canonical_frame_massless, canonical_massive,
                                canonical_massless, canonical_massless_handed, classify_handedness,
                                complex_form_massless, make_massive, make_massless,
                                massive_b_from_constraint, massive_displacement,
                                massive_rotation_prefactor, massless_displacement,
                                matching_group_sign, random_massive, random_massless,
                                rotation_form, rotation_form_massless, transform)
from lorelast.tensor_core import EPS4, flat, inner, random_lorentz, wedge

P0 = np.array([0.0, 0, 1, 1])
seeds = st.integers(0, 2 ** 32 - 1)


def star_eps(W):
    """*W for a 2-form written out with the permutation symbol (Minkowski, rho = 1)."""
    s = np.array([1, 1, 1, -1.0])
    Wu = W * s[:, None] * s[None, :]
    return 0.5 * np.einsum("ab,abcd->cd", Wu, EPS4)


def test_canonical_massless_valid():
    P = make_massless(P0, 0.8 * np.array([1, -1j, 0, 0]))
    assert P.a == pytest.approx(0.8)


@pytest.mark.parametrize("p, u, exc", [
    ([0, 0, 1, -1], [1, -1j, 0, 0], NotForward),
    ([0, 0, 1, 1], [1, 0, 0, 0], NotIsotropic),
    ([0, 0, 1, 2], [1, -1j, 0, 0], NotLightlike),
    ([0, 0, 1, 1], [1, 0, 0, 1], NotOrthogonal),
])
def test_make_massless_errors(p, u, exc):
    with pytest.raises(exc):
        make_massless(p, u)


def test_massless_displacement_values():
    A = massless_displacement(canonical_massless(1.0))
    assert_allclose(A(np.zeros(4)), [1, 0, 0, 0], atol=1e-15)
    x = np.array([0.0, 0, 0.5, math.pi / 2 - 0.5])
    assert_allclose(A(x), [0, 1, 0, 0], atol=1e-15)
    assert_allclose(massless_displacement(canonical_massless(2.0, -1))(x), [0, -2, 0, 0], atol=1e-15)


def test_upper_sign_hodge_eigenvalue():
    # independent route: evaluate *(p ^ u_flat) with the permutation symbol
    for s, lam, hand in ((1, -1j, "left"), (-1, 1j, "right")):
        P = canonical_massless(1.0, s)
        W = wedge(P.p, flat(P.u))
        assert_allclose(star_eps(W), lam * W, atol=1e-15)
        assert classify_handedness(P) == hand
        assert canonical_massless_handed(1.0, hand).u[1] == P.u[1]


@given(seeds, st.sampled_from([1, -1]))
def test_handedness_is_lorentz_invariant(seed, s):
    rng = np.random.default_rng(seed)
    P = canonical_massless(1.0, s, rng.uniform(0, 6))
    Q = transform(P, random_lorentz(rng, 1.0))
    assert classify_handedness(Q) == classify_handedness(P)


@given(seeds, st.sampled_from([1, -1]))
def test_canonical_frame_recovers_data(seed, s):
    rng = np.random.default_rng(seed)
    a = rng.uniform(0.2, 2)
    P = random_massless(rng, a, s, 0.8)
    L, sign, a_rec = canonical_frame_massless(P)
    assert sign == s == matching_group_sign(P)
    assert a_rec == pytest.approx(a)
    Q = transform(P, L)
    assert_allclose(Q.p, P0, atol=1e-9)
    assert_allclose(Q.u, a * np.array([1, -1j * s, 0, 0]), atol=1e-9)


@given(seeds)
def test_random_massless_is_volume_preserving_solution(seed):
    rng = np.random.default_rng(seed)
    P = random_massless(rng, 0.9, 1, 0.6)
    x = rng.uniform(-5, 5, (50, 4))
    A = massless_displacement(P)
    D = deformation_gradient(A, x)
    assert_allclose(np.linalg.det(D), 1, atol=1e-12)
    assert_allclose(np.stack(invariants(strain(D))), 0, atol=1e-11)
    E = euler_lagrange(A, QuadraticLagrangian(*rng.normal(size=2)), x)
    assert np.abs(E).max() < 1e-9


def test_massless_rotation_form_is_real_part_of_complex_form(rng):
    P = random_massless(rng, 1.2, -1)
    x = rng.uniform(-3, 3, (10, 4))
    ph = np.exp(1j * x @ P.p)
    F = np.real(complex_form_massless(P)[None] * ph[:, None, None])
    assert_allclose(F, rotation_form_massless(P, x), atol=1e-14)
    assert_allclose(rotation_form_massless(P, x),
                    np.array([polar_decompose(D).F for D in deformation_gradient(massless_displacement(P), x)]),
                    atol=1e-10)


# ---------------------------------------------------------------- massive

def test_canonical_massive_valid():
    m, a, b = 1.0, 0.4, 0.3
    c = 4 * (a * a + b * b)
    P = make_massive(m, [0, 0, 0, 2], a * np.array([1, -1j, 0, 0]), [0, 0, b, 0], c=c)
    assert P.a == pytest.approx(a)
    assert P.b == pytest.approx(b)
    P2 = make_massive(m, [0, 0, 0, 2], a * np.array([1, -1j, 0, 0]), [0, 0, -b, 0], c=c)
    assert P2.b == pytest.approx(-b)
    assert massive_b_from_constraint(m, a, c, -1) == pytest.approx(-b)


def test_make_massive_uses_lagrangian():
    m, a, b = 0.5, 0.5, 0.5   # c = 4 m^2 (a^2 + b^2) = 0.5
    P = make_massive(m, [0, 0, 0, 1], a * np.array([1, -1j, 0, 0]), [0, 0, b, 0],
                     L=QuadraticLagrangian(1.0, -1.0))
    assert P.c == pytest.approx(0.5)


@pytest.mark.parametrize("p, u, v, exc", [
    ([0, 0, 0, 2], [1, -1j, 0, 0], [1, 0, 0, 0], NotOrthogonal),
    ([0, 0, 0, 3], [1, -1j, 0, 0], [0, 0, 0, 0], MassShellViolated),
    ([0, 0, 0, 2], [1, -1j, 0, 0], [0, 0, 0.1, 0], ConstraintViolated),
])
def test_make_massive_errors(p, u, v, exc):
    with pytest.raises(exc):
        make_massive(1.0, p, 0.4 * np.array(u), v, c=1.0)


def test_massive_displacement_at_origin():
    P = canonical_massive(1.0, 1.0, 0.3)
    assert_allclose(massive_displacement(P)(np.array([0.2, 0.1, -1.0, 0.0])), [P.a, 0, 0, 0], atol=1e-15)


def test_massive_field_strength():
    m, c, b = 0.7, 1.5, 0.25
    P = canonical_massive(m, c, b)
    A = massive_displacement(P)
    x = np.random.default_rng(3).uniform(-4, 4, (20, 4))
    Jl = np.diag([1.0, 1, 1, -1]) @ A.jacobian(x)
    dA = np.swapaxes(Jl, -1, -2) - Jl
    assert_allclose(inner(dA, dA, k=2).real, -4 * m * m * (P.a ** 2 + b * b), atol=1e-12)


@given(seeds)
def test_massive_frame_and_b_are_invariant(seed):
    rng = np.random.default_rng(seed)
    m, c, b = rng.uniform(0.3, 2), rng.uniform(0.2, 3.5), rng.uniform(-0.2, 0.2)
    if c / (4 * m * m) <= b * b + 1e-3:
        return
    P = random_massive(rng, m, c, b, 0.8)
    L, a, b_rec = canonical_frame_massive(P)
    assert b_rec == pytest.approx(b, abs=1e-9)
    assert P.b == pytest.approx(b, abs=1e-9)
    Q = transform(P, L)
    assert_allclose(Q.p, [0, 0, 0, 2 * m], atol=1e-9)
    assert_allclose(Q.v, [0, 0, b, 0], atol=1e-9)


def test_prefactor_values():
    assert massive_rotation_prefactor(1.0) == pytest.approx(-math.atanh(0.5), abs=1e-15)
    assert massive_rotation_prefactor(1.0) == pytest.approx(-0.549306144, abs=1e-9)
    assert massive_rotation_prefactor(1e-14) == pytest.approx(-0.5, abs=1e-13)
    for c in (1e-9, 1e-6, 0.01, 2.0, 3.99):
        y = math.sqrt(c) / 2
        assert massive_rotation_prefactor(c) == pytest.approx(-math.atanh(y) / math.sqrt(c), rel=1e-13)
    with pytest.raises(PolarUndefined):
        massive_rotation_prefactor(4.0)


@pytest.mark.parametrize("c", [0.1, 1.0, 3.9])
def test_massive_polar_rotation_form(c):
    A = massive_displacement(canonical_massive(1.3, c, 0.1))
    x = np.random.default_rng(0).uniform(-3, 3, (5, 4))
    F = np.array([polar_decompose(D).F for D in deformation_gradient(A, x)])
    assert_allclose(F, rotation_form(A, x, massive_rotation_prefactor(c)), atol=1e-11)
