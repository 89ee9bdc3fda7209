import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from numpy.testing import assert_allclose, assert_array_equal

from lorelast import groups as grp
from lorelast.groups import (PT, SG0_MINUS, SG0_PLUS, TRANSLATIONS, ScrewGroup, closure_residual,
                             conjugate_group, connection_array, derive_connection, homogeneity_check,
                             light_cone_side, membership_residual, screw_element,
                             transport_inner_product_error, weitzenbock_torsion)
from lorelast.solutions import (canonical_massive, canonical_massless, massive_displacement,
                                massless_displacement, matching_group_sign, random_massless)

finite = st.floats(-4, 4, allow_nan=False)
q4 = st.lists(finite, min_size=4, max_size=4).map(np.array)
GROUPS = [SG0_PLUS, SG0_MINUS, ScrewGroup("SGm", 0.7), TRANSLATIONS]
QS = np.random.default_rng(7).uniform(-1, 1, (16, 4))


@pytest.mark.parametrize("G", GROUPS, ids=lambda G: G.kind)
def test_identity_element(G):
    assert_array_equal(screw_element(G, np.zeros(4)), np.eye(5))


def test_sg0_plus_quarter_turn():
    M = ScrewGroup("right0").element([0, 0, math.pi / 2, 0])
    R = np.eye(4)
    R[:2, :2] = [[0, -1], [1, 0]]
    assert_allclose(M[:4, :4], R, atol=1e-15)
    assert_allclose(M[:4, 4], [0, 0, math.pi / 2, 0])


def test_massive_time_translation():
    m, t = 1.3, 0.4
    M = ScrewGroup("massive", m).element([0, 0, 0, t])
    assert_allclose(M[:2, :2], [[math.cos(2 * m * t), -math.sin(2 * m * t)],
                                [math.sin(2 * m * t), math.cos(2 * m * t)]])
    assert_allclose(M[:4, 4], [0, 0, 0, t])


def test_sg_rejects_bad_input():
    with pytest.raises(ValueError):
        ScrewGroup("spiral")
    with pytest.raises(ValueError):
        ScrewGroup("SGm", 0.0)


@pytest.mark.parametrize("G", GROUPS, ids=lambda G: G.kind)
@given(q4, q4)
def test_group_axioms(G, q1, q2):
    assert closure_residual(G, q1, q2) < 1e-10
    assert membership_residual(G, np.linalg.inv(G.element(q1))) < 1e-10
    assert grp.is_restricted(G.element(q1))


@pytest.mark.parametrize("G", GROUPS, ids=lambda G: G.kind)
@given(q4, q4)
def test_transitivity(G, P, Q):
    assert_allclose(grp.act(G.transport_element(P, Q), P), Q, atol=1e-12)


@pytest.mark.parametrize("G", GROUPS, ids=lambda G: G.kind)
def test_transport_is_metric_compatible(G, rng):
    assert transport_inner_product_error(G, rng, 50) < 1e-10


@pytest.mark.parametrize("G, expected", [
    (SG0_PLUS, [0, 0, Fraction(-2, 3), Fraction(-2, 3)]),
    (SG0_MINUS, [0, 0, Fraction(2, 3), Fraction(2, 3)]),
    (ScrewGroup("SGm", 0.7), [0, 0, Fraction(-14, 15), 0]),
    (ScrewGroup("SGm", 2), [0, 0, Fraction(-8, 3), 0]),
    (TRANSLATIONS, [0, 0, 0, 0]),
], ids=["SG0+", "SG0-", "SGm0.7", "SGm2", "T"])
def test_dual_axial_torsion_exact(G, expected):
    tor = weitzenbock_torsion(G)
    assert list(tor.dual_axial) == expected
    assert all(v == 0 for v in tor.vec.ravel())
    assert all(v == 0 for v in (tor.ax + tor.vec + tor.ten - tor.T_low).ravel())


def test_float_torsion_route_agrees():
    for G in GROUPS:
        exact = np.array(weitzenbock_torsion(G).dual_axial, float)
        assert_allclose(np.array(weitzenbock_torsion(G, exact=False).dual_axial, float), exact, atol=1e-15)


@pytest.mark.parametrize("G", GROUPS, ids=lambda G: G.kind)
def test_derived_connection_matches_table(G):
    for P in (None, np.array([1.0, -2.0, 0.3, 4.0])):
        assert_allclose(derive_connection(G, P), connection_array(G, exact=False), atol=1e-9)


def test_connection_examples():
    assert derive_connection(ScrewGroup("SGm", 0.6))[0, 3, 1] == pytest.approx(1.2, abs=1e-9)
    assert derive_connection(SG0_PLUS)[0, 2, 1] == pytest.approx(1.0, abs=1e-9)
    assert_allclose(derive_connection(TRANSLATIONS), 0, atol=0)


def test_light_cone_sides():
    plus = light_cone_side(np.array(weitzenbock_torsion(SG0_PLUS).dual_axial, float))
    minus = light_cone_side(np.array(weitzenbock_torsion(SG0_MINUS).dual_axial, float))
    assert plus * minus == -1
    assert light_cone_side(np.array([1.0, 0, 0, 0])) == 0


@pytest.mark.parametrize("s, G", [(1, SG0_PLUS), (-1, SG0_MINUS)])
def test_massless_equivariance(s, G):
    A = massless_displacement(canonical_massless(0.8, s))
    h = homogeneity_check(A, G, QS)
    assert h.equivariant
    assert h.residuals.max() < 1e-8
    other = SG0_MINUS if G is SG0_PLUS else SG0_PLUS
    assert not homogeneity_check(A, other, QS).homogeneous


def test_random_massless_pairs_with_its_group(rng):
    for s in (1, -1):
        P = random_massless(rng, 1.0, s)
        assert matching_group_sign(P) == s


@pytest.mark.parametrize("b", [0.0, 0.15, -0.3])
def test_massive_homogeneity(b):
    m = 0.9
    c = 4 * m * m * (0.25 + b * b)
    A = massive_displacement(canonical_massive(m, c, b))
    h = homogeneity_check(A, ScrewGroup("SGm", m), QS)
    assert h.homogeneous
    assert h.residuals.max() < 1e-8
    assert h.equivariant == (b == 0)
    assert_allclose(h.q_prime[:, 2], QS[:, 2] - 2 * m * b * QS[:, 3], atol=1e-9)


def test_conjugations():
    C = conjugate_group(PT, ScrewGroup("SGm", 1.1), QS)
    assert (C.family, C.rotation_sign) == ("SGm", -1)
    assert C.m == pytest.approx(1.1)
    for G in GROUPS:
        assert conjugate_group(np.eye(5), G, QS).family == G.kind
    # the 1 <-> 2 reflection turns SG0+ into SG0-, but it is not restricted
    F = np.diag([1.0, -1, 1, 1, 1])
    assert conjugate_group(F, SG0_PLUS, QS).family == "SG0-"
    assert not grp.is_restricted(F)
