"""Euler-Lagrange field, discrete action, directional variations and the constraint term.

The field equation is assembled from the power-sum form of the Lagrangian.
With Q^b_a = dL/dS^a_b the variation of J = int L dx reads
dJ = int E_c dA^c dx, where

    E_c = -[(g_bc + d_b A_c) d^a Q^b_a + (delta^a_c + d^a A_c) d_b Q^b_a
            + 2 (d^a d_b A_c) Q^b_a].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import SampledField
from .kinematics import I4, invariants, loglog_slope, strain_from_jacobian
from .tensor_core import MINKOWSKI, det4


def _matpow(S, n):
    out = [np.broadcast_to(I4, S.shape).copy()]
    for _ in range(n):
        out.append(out[-1] @ S)
    return out


def strain_derivatives(J, H, g=MINKOWSKI):
    """S and dS/dx^mu (stacked on axis -3) from the jacobian and hessian of A."""
    G, Gi = g.components, g.inverse
    D = I4 + J
    S = strain_from_jacobian(J, g)
    Hm = np.moveaxis(H, -1, -3)                       # [..., mu, a, b] = d_mu D^a_b
    DtG = np.swapaxes(D, -1, -2) @ G
    dS = Gi @ np.swapaxes(Hm, -1, -2) @ G @ D[..., None, :, :] + Gi @ DtG[..., None, :, :] @ Hm
    return S, dS


def _power_sum_partials(L, p):
    """dL/dp_k and d^2 L/dp_j dp_k for the monomial expansion of L, per point."""
    shape = p[1].shape
    d1 = np.zeros(shape + (5,))
    d2 = np.zeros(shape + (5, 5))
    for coef, part in L.power_sum_terms():
        r = len(part)
        for i in range(r):
            rest_i = [part[j] for j in range(r) if j != i]
            prod = coef * np.prod([p[k] for k in rest_i], axis=0) if rest_i else coef
            d1[..., part[i]] += prod
            for jj, kj in enumerate(rest_i):
                rest_ij = [k for l, k in enumerate(rest_i) if l != jj]
                prod2 = coef * np.prod([p[k] for k in rest_ij], axis=0) if rest_ij else coef
                d2[..., part[i], kj] += prod2
    return d1, d2


def stress_tensor(L, S, dS):
    """Q = dL/dS (as Q[..., b, a] = Q^b_a) and its coordinate derivatives dQ[..., mu, b, a].

    Each monomial prod_i p_{k_i} contributes sum_i k_i S^{k_i - 1} prod_{j != i} p_{k_j};
    the product rule is organized through dL/dp_k and d^2 L/dp_j dp_k.
    """
    pw = _matpow(S, 3)
    dpw = [np.zeros(dS.shape), dS]
    for n in range(2, 4):
        acc = 0
        for r in range(n):
            acc = acc + pw[r][..., None, :, :] @ dS @ pw[n - 1 - r][..., None, :, :]
        dpw.append(acc)
    p = {k: np.trace(pw[k - 1] @ S, axis1=-2, axis2=-1) for k in range(1, 5)}
    dp = {k: k * np.einsum("...ab,...mba->...m", pw[k - 1], dS) for k in range(1, 5)}
    d1, d2 = _power_sum_partials(L, p)
    Q = 0.0
    dQ = 0.0
    for k in range(1, 5):
        dLk = sum(d2[..., k, j, None] * dp[j] for j in range(1, 5))     # d_mu (dL/dp_k)
        Q = Q + k * d1[..., k, None, None] * pw[k - 1]
        dQ = dQ + k * (dLk[..., :, None, None] * pw[k - 1][..., None, :, :]
                       + d1[..., k, None, None, None] * dpw[k - 1])
    return Q, dQ


def euler_lagrange(A, L, x, g=MINKOWSKI):
    """E_c at the points x for a displacement field with exact derivatives."""
    J, H = A.jacobian(x), A.hessian(x)
    return euler_lagrange_from_derivatives(J, H, L, g)


def euler_lagrange_from_derivatives(J, H, L, g=MINKOWSKI):
    G, Gi = g.components, g.inverse
    S, dS = strain_derivatives(J, H, g)
    Q, dQ = stress_tensor(L, S, dS)
    Jl = G @ J                                        # Jl[c, b] = d_b A_c
    Hl = np.einsum("cn,...nbm->...cbm", G, H)         # d_m d_b A_c
    up_div = np.einsum("am,...mba->...b", Gi, dQ)     # d^a Q^b_a
    low_div = np.einsum("...bba->...a", dQ)           # d_b Q^b_a
    t1 = np.einsum("...cb,...b->...c", G + Jl, up_div)
    t2 = np.einsum("...ca,...a->...c", I4 + Jl @ Gi, low_div)
    t3 = 2 * np.einsum("am,...cbm,...ba->...c", Gi, Hl, Q)
    return -(t1 + t2 + t3)


# ---------------------------------------------------------------- action

def action_density(L, J, g=MINKOWSKI):
    e = invariants(strain_from_jacobian(J, g))
    return L.value(e.e2, e.e3, e.e4)


def discrete_action(L, J, grid, g=MINKOWSKI):
    """Rectangle-rule action from jacobians sampled on the grid."""
    return grid.integrate(action_density(L, J, g)) * g.density


def _jacobian_on_grid(F, grid, method):
    if isinstance(F, SampledField):
        return F.gradient(method).values()
    return F.jacobian(grid.points())


def weak_form_check(A, Delta, L, grid, eps=1e-3, g=MINKOWSKI):
    """Directional derivative of the discrete action against sum E . Delta h^4.

    Both fields are analytic so the two sides differ only by quadrature and
    the fourth-order epsilon stencil.  Returns (fd, assembled, rel_error).
    """
    x = grid.points()
    JA, JD = A.jacobian(x), Delta.jacobian(x)

    def act(t):
        return discrete_action(L, JA + t * JD, grid, g)

    fd = (-act(2 * eps) + 8 * act(eps) - 8 * act(-eps) + act(-2 * eps)) / (12 * eps)
    E = euler_lagrange(A, L, x, g)
    assembled = grid.integrate(np.einsum("...c,...c->...", E, Delta(x))) * g.density
    return fd, assembled, abs(fd - assembled) / max(abs(fd), abs(assembled), 1e-300)


@dataclass
class DirectionalResult:
    slope: float
    eps: np.ndarray
    diffs: np.ndarray


def directional_variation(A, Delta, L, grid, eps=(0.02, 0.01, 0.005, 0.0025),
                          method="spectral", g=MINKOWSKI):
    """Fit the power of eps in J(A + eps Delta) - J(A).

    ``A`` is analytic; ``Delta`` may be analytic or a periodic SampledField
    (differentiated with ``method``).  Slope 2 signals a critical point.
    """
    JA = A.jacobian(grid.points())
    JD = _jacobian_on_grid(Delta, grid, method)
    J0 = discrete_action(L, JA, grid, g)
    eps = np.asarray(eps, float)
    diffs = np.array([abs(discrete_action(L, JA + e * JD, grid, g) - J0) for e in eps])
    return DirectionalResult(float(loglog_slope(eps, np.maximum(diffs, 1e-300))), eps, diffs)


# ---------------------------------------------------------------- constraint / pressure

def pressure_term(D, grad_pcirc):
    """(dp)(phi(x)) = D^{-T} grad(p o phi)(x)."""
    D = np.asarray(D)
    return np.linalg.solve(np.swapaxes(D, -1, -2), np.asarray(grad_pcirc)[..., None])[..., 0]


def constraint_functional(A, p, grid, t=0.0, Delta=None):
    """K = int p(phi(x)) (|det D| - 1) dx for phi = x + A + t Delta."""
    x = grid.points()
    y = x + A(x)
    J = A.jacobian(x)
    if Delta is not None:
        y = y + t * Delta(x)
        J = J + t * Delta.jacobian(x)
    return grid.integrate(p(y) * (np.abs(det4(I4 + J)) - 1))


@dataclass
class ConstraintCheck:
    slope: float
    eps: np.ndarray
    residuals: np.ndarray
    first_order: float         # closed-form dK per unit eps


def constraint_variation_check(A, Delta, p, grid, eps=(0.02, 0.01, 0.005, 0.0025)):
    """Direct K differences against -eps int grad p(phi(x)) . Delta dx.

    The residual should scale as eps^2 for smooth periodic data.
    """
    x = grid.points()
    y = x + A(x)
    first = -grid.integrate(np.einsum("...a,...a->...", p.gradient(y), Delta(x)))
    K0 = constraint_functional(A, p, grid)
    eps = np.asarray(eps, float)
    res = np.array([abs(constraint_functional(A, p, grid, e, Delta) - K0 - e * first) for e in eps])
    slope = float(loglog_slope(eps, np.maximum(res, 1e-300)))
    return ConstraintCheck(slope, eps, res, float(first))


@dataclass
class ResidualReport:
    sup: float
    l2: float
    invariant_spread: tuple


def residual_report(A, L, x, g=MINKOWSKI):
    """Sup and root-mean-square of E plus the spread of each invariant over x."""
    E = euler_lagrange(A, L, x, g)
    e = invariants(strain_from_jacobian(A.jacobian(x), g))
    spread = tuple(float(np.ptp(q)) for q in e)
    return ResidualReport(float(np.abs(E).max()), float(np.sqrt(np.mean(np.abs(E) ** 2))), spread)
