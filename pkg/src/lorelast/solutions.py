"""Explicit plane-wave solutions: massless (lightlike p) and massive (timelike p).

Massless data (p, u): A = Re[u exp(i p.x)] with p lightlike and future
pointing (p_4 > 0), u isotropic (u.u = 0) and p(u) = 0.

Massive data (m, p, u, v): A = Re[u exp(i p.x)] + (p.x) v with p.p = -4 m^2,
u isotropic and orthogonal to p, v real and orthogonal to p, Re u, Im u, and
4 m^2 (u.conj(u)/2 + v.v) = c where c is a critical value of the Lagrangian.

Sign of a solution: the upper sign is u = a(1, -i, 0, 0) in the canonical
frame, giving A = a(cos t, sin t, 0, 0), t = x3 + x4.  With eps_1234 = +1 the
upper sign satisfies *(p ^ u_flat) = -i (p ^ u_flat), so by the Hodge test in
:func:`classify_handedness` it is left-handed.  The upper-sign solution is
equivariant under the group ``SG0+`` of :mod:`lorelast.groups`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (ConstraintViolated, MassShellViolated, NotForward, NotIsotropic,
                     NotLightlike, NotOrthogonal, NotPolarized, PolarUndefined)
from .fields import TrigField
from .lagrangian import find_critical_c
from .tensor_core import MINKOWSKI, flat, hodge, random_lorentz, sharp, wedge

_TOL = 1e-10


def _cdot(u, v, g):
    return np.einsum("a,ab,b->", u, g.components, v)


@dataclass(frozen=True)
class MasslessParams:
    p: np.ndarray       # covector
    u: np.ndarray       # complex vector
    g: object = MINKOWSKI

    @property
    def a(self):
        return math.sqrt(abs(_cdot(self.u, np.conj(self.u), self.g)) / 2)

    @property
    def handedness(self):
        return classify_handedness(self)

    @property
    def sign(self):
        return -1 if self.handedness == "right" else +1


@dataclass(frozen=True)
class MassiveParams:
    m: float
    p: np.ndarray
    u: np.ndarray
    v: np.ndarray
    c: float
    b: float
    g: object = MINKOWSKI

    @property
    def a(self):
        return math.sqrt(abs(_cdot(self.u, np.conj(self.u), self.g)) / 2)


# ---------------------------------------------------------------- massless

def make_massless(p, u, g=MINKOWSKI, tol=_TOL):
    """Validate massless plane-wave data; raises the matching error on failure."""
    p = np.asarray(p, dtype=float)
    u = np.asarray(u, dtype=complex)
    ps, us = max(np.abs(p).max(), 1e-300), max(np.abs(u).max(), 1e-300)
    if abs(g.codot(p, p)) > tol * ps ** 2:
        raise NotLightlike(f"p.p = {g.codot(p, p):.3g}")
    if p[3] <= 0:
        raise NotForward(f"p_4 = {p[3]:.3g} <= 0")
    if abs(_cdot(u, u, g)) > tol * us ** 2:
        raise NotIsotropic(f"u.u = {_cdot(u, u, g):.3g}")
    if abs(p @ u) > tol * ps * us:
        raise NotOrthogonal(f"p(u) = {p @ u:.3g}")
    return MasslessParams(p, u, g)


def massless_displacement(P):
    return TrigField(P.u[None], P.p[None])


def canonical_massless(a=1.0, sign=+1, phase=0.0):
    """Canonical frame data: p = (0, 0, 1, 1), u = a exp(i phase) (1, -sign i, 0, 0)."""
    u = a * np.exp(1j * phase) * np.array([1, -1j * sign, 0, 0])
    return make_massless(np.array([0.0, 0.0, 1.0, 1.0]), u)


def canonical_massless_handed(a=1.0, handedness="left", phase=0.0):
    """Canonical data of the requested Hodge handedness (left = upper sign)."""
    if handedness not in ("left", "right"):
        raise ValueError("handedness must be 'left' or 'right'")
    return canonical_massless(a, +1 if handedness == "left" else -1, phase)


def classify_handedness(P, tol=_TOL):
    """'right' if *(p ^ u_flat) = +i (p ^ u_flat), 'left' if it equals -i times it."""
    W = wedge(P.p, flat(P.u, P.g))
    H = hodge(W, P.g)
    scale = np.abs(W).max()
    if np.abs(H - 1j * W).max() <= tol * scale:
        return "right"
    if np.abs(H + 1j * W).max() <= tol * scale:
        return "left"
    raise NotPolarized("p ^ u_flat is not an eigenform of the Hodge star")


def transform(P, L):
    """Data in coordinates x' = L x: vectors map by L, covectors by L^{-T}."""
    Linv = np.linalg.inv(L)
    if isinstance(P, MasslessParams):
        return make_massless(P.p @ Linv, L @ P.u, P.g)
    return MassiveParams(P.m, P.p @ Linv, L @ P.u, L @ P.v, P.c, P.b, P.g)


def random_massless(rng, a=1.0, sign=+1, max_rapidity=0.5):
    """Randomly boosted/rotated data, also randomizing phase and null rotations."""
    P = canonical_massless(a, sign, rng.uniform(0, 2 * np.pi))
    # null rotation u -> u + lambda p_sharp keeps every constraint
    lam = complex(*rng.normal(0, 0.3, 2))
    u = P.u + lam * sharp(P.p)
    L = random_lorentz(rng, max_rapidity)
    return transform(make_massless(P.p, u), L)


def _future_null_partner(p_sharp, e1, e2, g):
    """Null vector n orthogonal to e1, e2 with g(p_sharp, n) = 2."""
    G = g.components
    for w in np.eye(4)[::-1]:
        w = w - (e1 @ G @ w) * e1 - (e2 @ G @ w) * e2
        pw = p_sharp @ G @ w
        if abs(pw) > 1e-6:
            break
    ww = w @ G @ w
    # n = alpha p + beta w: 0 = 2 alpha beta pw + beta^2 ww, 2 = beta pw
    beta = 2 / pw
    alpha = -beta * ww / (2 * pw)
    return alpha * p_sharp + beta * w


def canonical_frame_massless(P):
    """Proper orthochronous L with L u = a(1, -s i, 0, 0) and p L^{-1} = (0, 0, 1, 1).

    Returns (L, s, a); s = +1 for the upper sign.
    """
    g = P.g
    a = P.a
    e1 = P.u.real / a
    ps = sharp(P.p, g)
    n = None
    for s in (+1, -1):
        e2 = -s * P.u.imag / a
        n = _future_null_partner(ps, e1, e2, g)
        e3, e4 = (ps + n) / 2, (n - ps) / 2
        B = np.column_stack([e1, e2, e3, e4])
        if np.linalg.det(B) > 0:
            return np.linalg.inv(B), s, a
    raise NotPolarized("could not orient the canonical frame")


def matching_group_sign(P):
    """+1 if the solution is equivariant under SG0+, -1 for SG0-."""
    return canonical_frame_massless(P)[1]


def rotation_form_massless(P, x):
    """Closed-form rotation 2-form F = -(1/2) dA_flat at points x."""
    return rotation_form(massless_displacement(P), x, -0.5, P.g)


def complex_form_massless(P):
    """Amplitude of the complexified 2-form: -(i/2) p ^ u_flat."""
    return -0.5j * wedge(P.p, flat(P.u, P.g))


# ---------------------------------------------------------------- massive

def massive_b(m, p, u, v, g=MINKOWSKI):
    """b = -i/(4 m a^2) * (p ^ u_flat ^ conj(u)_flat ^ v_flat)."""
    a2 = _cdot(u, np.conj(u), g).real / 2
    W = wedge(wedge(wedge(p, flat(u, g)), flat(np.conj(u), g), 2, 1), flat(v, g), 3, 1)
    val = -1j / (4 * m * a2) * hodge(W, g, k=4)
    return float(np.real(val))


def make_massive(m, p, u, v, L=None, c=None, g=MINKOWSKI, tol=_TOL):
    """Validate massive data; c is L's smallest critical value unless given."""
    p = np.asarray(p, dtype=float)
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=float)
    if c is None:
        c = find_critical_c(L).c
    ps, us = np.abs(p).max(), max(np.abs(u).max(), 1e-300)
    vs = max(np.abs(v).max(), 1.0)
    if m <= 0:
        raise MassShellViolated("m must be positive")
    if abs(g.codot(p, p) + 4 * m * m) > tol * ps ** 2:
        raise MassShellViolated(f"p.p = {g.codot(p, p):.6g}, expected {-4 * m * m:.6g}")
    if p[3] <= 0:
        raise NotForward(f"p_4 = {p[3]:.3g} <= 0")
    if abs(_cdot(u, u, g)) > tol * us ** 2:
        raise NotIsotropic(f"u.u = {_cdot(u, u, g):.3g}")
    if abs(p @ u) > tol * ps * us:
        raise NotOrthogonal(f"p(u) = {p @ u:.3g}")
    if abs(p @ v) > tol * ps * vs or abs(_cdot(u, v, g)) > tol * us * vs:
        raise NotOrthogonal("v must be orthogonal to p, Re u and Im u")
    a2 = _cdot(u, np.conj(u), g).real / 2
    lhs = 4 * m * m * (a2 + g.dot(v, v))
    if abs(lhs - c) > tol * max(1.0, abs(c)):
        raise ConstraintViolated(f"4 m^2 (a^2 + b^2) = {lhs:.12g} but c = {c:.12g}")
    b = massive_b(m, p, u, v, g)
    return MassiveParams(float(m), p, u, v, float(c), b, g)


def canonical_massive(m, c, b=0.0, phase=0.0):
    """Canonical data p = (0,0,0,2m), u = a(1,-i,0,0), v = (0,0,b,0); a from the constraint."""
    a2 = c / (4 * m * m) - b * b
    if a2 <= 0:
        raise ConstraintViolated(f"b = {b} leaves no room for a: a^2 = {a2:.3g}")
    a = math.sqrt(a2)
    u = a * np.exp(1j * phase) * np.array([1, -1j, 0, 0])
    return make_massive(m, [0, 0, 0, 2 * m], u, [0, 0, b, 0], c=c)


def massive_b_from_constraint(m, a, c, sign=+1):
    """b = +-sqrt(c / (4 m^2) - a^2)."""
    b2 = c / (4 * m * m) - a * a
    if b2 < 0:
        raise ConstraintViolated("a exceeds the constraint bound")
    return sign * math.sqrt(b2)


def massive_displacement(P):
    return TrigField(P.u[None], P.p[None], linear=np.outer(P.v, P.p))


def random_massive(rng, m, c, b=0.0, max_rapidity=0.5):
    P0 = canonical_massive(m, c, b, rng.uniform(0, 2 * np.pi))
    return transform(P0, random_lorentz(rng, max_rapidity))


def canonical_frame_massive(P):
    """Proper orthochronous L reducing massive data to canonical form; returns (L, a, b)."""
    g = P.g
    G = g.components
    a = P.a
    e1 = P.u.real / a
    e2 = -P.u.imag / a
    e4 = -sharp(P.p, g) / (2 * P.m)
    w = np.linalg.svd(np.vstack([e1 @ G, e2 @ G, e4 @ G]))[2][-1]
    e3 = w / math.sqrt(w @ G @ w)
    B = np.column_stack([e1, e2, e3, e4])
    if np.linalg.det(B) < 0:
        e3 = -e3
        B[:, 2] = e3
    return np.linalg.inv(B), a, float(e3 @ G @ P.v)


def massive_rotation_prefactor(c):
    """-(1/sqrt c) artanh(sqrt(c)/2) for 0 < c < 4, with the series near 0."""
    if c >= 4:
        raise PolarUndefined(f"c = {c} >= 4: the rotation 2-form does not exist")
    if c <= 0:
        raise ValueError("c must be positive")
    y = math.sqrt(c) / 2
    if y < 1e-4:
        ratio = 1 + y * y / 3 + y ** 4 / 5
    else:
        ratio = math.atanh(y) / y
    return -0.5 * ratio


def rotation_form(A, x, prefactor, g=MINKOWSKI):
    """prefactor * dA_flat at points x, (dA)_ab = d_a A_b - d_b A_a."""
    Jl = g.components @ A.jacobian(x)
    dA = np.swapaxes(Jl, -1, -2) - Jl
    return prefactor * dA


def rotation_form_massive(P, x):
    return rotation_form(massive_displacement(P), x, massive_rotation_prefactor(P.c), P.g)


def complex_form_massive(P):
    """Oscillating part: -(i/sqrt c) artanh(sqrt(c)/2) p ^ u_flat."""
    return 1j * massive_rotation_prefactor(P.c) * wedge(P.p, flat(P.u, P.g))
