"""Lagrangian families L(e2, e3, e4), their normalization and critical strain values."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np
from scipy.optimize import brentq

from .errors import LorelastError, NoCriticalPoint
from .tensor_core import TOL_EXACT

# ---------------------------------------------------------------- power-sum polynomials
# A polynomial in p1..p4 is a dict {partition: Fraction}, a partition being a
# sorted tuple of k values (p_k factors); () is the constant monomial.


def _pmul(a, b):
    out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            key = tuple(sorted(ka + kb))
            out[key] = out.get(key, 0) + ca * cb
    return {k: v for k, v in out.items() if v != 0}


def _padd(*polys):
    out = {}
    for poly in polys:
        for k, v in poly.items():
            out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v != 0}


def _pscale(a, s):
    return {k: s * v for k, v in a.items()}


F = Fraction
E2 = {(1, 1): F(1, 2), (2,): F(-1, 2)}
E3 = {(1, 1, 1): F(1, 6), (1, 2): F(-1, 2), (3,): F(1, 3)}
E4 = {(1, 1, 1, 1): F(1, 24), (1, 1, 2): F(-1, 4), (2, 2): F(1, 8), (1, 3): F(1, 3), (4,): F(-1, 4)}


class Term(NamedTuple):
    coef: float
    partition: tuple


# ---------------------------------------------------------------- models

class LagrangianModel:
    """L as a function of the strain invariants e2, e3, e4."""

    name = "generic"

    def value(self, e2, e3, e4):
        raise NotImplementedError

    def gradient(self, e2, e3, e4):
        """(dL/de2, dL/de3, dL/de4)."""
        raise NotImplementedError

    def power_sum_terms(self):
        """L as sum coef * prod_i p_{k_i}, used by the field-equation assembly."""
        raise NotImplementedError


@dataclass(frozen=True)
class QuadraticLagrangian(LagrangianModel):
    """L = alpha (e2 + e3 + e4)^2 + beta e2."""

    alpha: float
    beta: float
    name = "quadratic"

    def value(self, e2, e3, e4):
        s = e2 + e3 + e4
        return self.alpha * s * s + self.beta * e2

    def gradient(self, e2, e3, e4):
        s = 2 * self.alpha * (e2 + e3 + e4)
        return s + self.beta, s, s

    def power_sum_terms(self):
        s = _padd(E2, E3, E4)
        sq = _pmul(s, s)
        out = {}
        for poly, coef in ((sq, self.alpha), (E2, self.beta)):
            for k, v in poly.items():
                out[k] = out.get(k, 0.0) + coef * float(v)
        return [Term(c, k) for k, c in sorted(out.items()) if c != 0]

    @property
    def lame(self):
        return lame_parameters(self.alpha, self.beta)


@dataclass(frozen=True)
class HarmonicMapLagrangian(LagrangianModel):
    """Harmonic-map density e1 with the volume constraint: L = -(e2 + e3 + e4)."""

    name = "harmonic"

    def value(self, e2, e3, e4):
        return -(e2 + e3 + e4)

    def gradient(self, e2, e3, e4):
        m = -np.ones_like(np.asarray(e2, float))
        return m, m, m

    def power_sum_terms(self):
        poly = _pscale(_padd(E2, E3, E4), -1)
        return [Term(float(v), k) for k, v in sorted(poly.items())]


class ReducedLagrangian(LagrangianModel):
    """L(e2, e3, e4) = full(-(e2 + e3 + e4), e2, e3, e4) for a full density of e1..e4.

    The gradient uses central differences unless ``full_gradient`` (returning
    the four partials) is supplied.  There is no power-sum expansion, so this
    model is for tabulation and root finding only.
    """

    name = "reduced"

    def __init__(self, full, full_gradient=None, step=1e-6):
        self.full, self.full_gradient, self.step = full, full_gradient, step

    def value(self, e2, e3, e4):
        return self.full(-(e2 + e3 + e4), e2, e3, e4)

    def gradient(self, e2, e3, e4):
        if self.full_gradient is not None:
            g1, g2, g3, g4 = self.full_gradient(-(e2 + e3 + e4), e2, e3, e4)
            return g2 - g1, g3 - g1, g4 - g1
        h = self.step
        args = [np.asarray(e, float) for e in (e2, e3, e4)]
        out = []
        for i in range(3):
            up = [a + h if j == i else a for j, a in enumerate(args)]
            dn = [a - h if j == i else a for j, a in enumerate(args)]
            out.append((self.value(*up) - self.value(*dn)) / (2 * h))
        return tuple(out)

    def power_sum_terms(self):
        raise NotImplementedError("a reduced Lagrangian has no polynomial expansion")


def reduce_lagrangian(full, full_gradient=None):
    """Eliminate e1 with the volume constraint e1 + e2 + e3 + e4 = 0."""
    return ReducedLagrangian(full, full_gradient)


def power_sum_polynomial(which):
    """Exact polynomial for 'e2', 'e3', 'e4' (exposed for tests)."""
    return dict({"e2": E2, "e3": E3, "e4": E4}[which])


# ---------------------------------------------------------------- conditions

class Condition1(NamedTuple):
    value: float
    normalized: bool
    rescale: float      # multiply L by this to normalize; never applied here


def check_condition1(L, tol=TOL_EXACT):
    """dL/de2 at zero strain should equal -1."""
    v = float(L.gradient(0.0, 0.0, 0.0)[0])
    rescale = -1.0 / v if v != 0 else float("inf")
    return Condition1(v, abs(v + 1) <= tol, rescale)


class CriticalValue(NamedTuple):
    c: float
    roots: tuple


def find_critical_c(L, c_max=1e3, step=1e-2, xtol=1e-15):
    """Critical values c > 0 where dL/de2(c, 0, 0) = 0.

    The interval (0, c_max] is scanned with the given step; sign changes are
    refined with Brent's method and exact zeros on nodes are kept.  Returns
    the smallest root together with all roots found.
    """
    cs = np.arange(1, int(round(c_max / step)) + 1) * step
    f = np.asarray(L.gradient(cs, np.zeros_like(cs), np.zeros_like(cs))[0], float)
    f = np.broadcast_to(f, cs.shape)
    roots = [float(c) for c, v in zip(cs, f) if v == 0.0]
    flips = np.nonzero((f[:-1] * f[1:]) < 0)[0]

    def fun(c):
        return float(L.gradient(c, 0.0, 0.0)[0])

    for i in flips:
        roots.append(brentq(fun, cs[i], cs[i + 1], xtol=xtol, rtol=4 * np.finfo(float).eps))
    # a root in (0, step) would be missed by the grid
    f0 = fun(1e-300)
    if f0 != 0 and f0 * f[0] < 0:
        roots.append(brentq(fun, 1e-300, cs[0], xtol=xtol))
    if not roots:
        raise NoCriticalPoint(f"dL/de2(c,0,0) has no zero in (0, {c_max}]")
    roots = tuple(sorted(roots))
    return CriticalValue(roots[0], roots)


class Lame(NamedTuple):
    lam: float
    mu: float
    nu: float


def lame_parameters(alpha, beta):
    """Lame constants of the quadratic family: lambda = 2a + b, mu = -b/2."""
    if beta == 0:
        raise LorelastError("beta = 0 gives a degenerate elastic model")
    if 4 * alpha + beta == 0:
        raise LorelastError("4 alpha + beta = 0: Poisson ratio undefined")
    return Lame(2 * alpha + beta, -beta / 2, (2 * alpha + beta) / (4 * alpha + beta))
