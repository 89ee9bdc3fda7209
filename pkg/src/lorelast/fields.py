"""Analytic displacement and scalar fields with exact derivatives.

A displacement field A maps points x (trailing axis of length 4) to vectors
A^a(x).  ``jacobian`` returns J[..., a, b] = dA^a/dx^b and ``hessian``
returns H[..., a, b, c] = d^2 A^a / dx^b dx^c.
"""

from __future__ import annotations

import numpy as np


class DisplacementField:
    """Base class; subclasses implement ``__call__``, ``jacobian`` and ``hessian``."""

    def __call__(self, x):
        raise NotImplementedError

    def jacobian(self, x):
        raise NotImplementedError

    def hessian(self, x):
        raise NotImplementedError

    def __add__(self, other):
        return SumField([(1.0, self), (1.0, other)])

    def __sub__(self, other):
        return SumField([(1.0, self), (-1.0, other)])

    def __mul__(self, s):
        return SumField([(float(s), self)])

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0


class SumField(DisplacementField):
    def __init__(self, terms):
        flat = []
        for c, f in terms:
            if isinstance(f, SumField):
                flat += [(c * c2, f2) for c2, f2 in f.terms]
            else:
                flat.append((c, f))
        self.terms = flat

    def _combine(self, method, x):
        return sum(c * getattr(f, method)(x) for c, f in self.terms)

    def __call__(self, x):
        return self._combine("__call__", x)

    def jacobian(self, x):
        return self._combine("jacobian", x)

    def hessian(self, x):
        return self._combine("hessian", x)


class TrigField(DisplacementField):
    """A(x) = offset + G x + sum_j Re[U_j exp(i K_j . x)].

    ``amplitudes`` U has shape (n, 4) (complex vectors), ``wavevectors`` K has
    shape (n, 4) (real covectors), ``linear`` G is a 4x4 matrix.
    """

    def __init__(self, amplitudes=None, wavevectors=None, linear=None, offset=None):
        self.U = np.zeros((0, 4), complex) if amplitudes is None else np.atleast_2d(
            np.asarray(amplitudes, dtype=complex))
        self.K = np.zeros((0, 4)) if wavevectors is None else np.atleast_2d(
            np.asarray(wavevectors, dtype=float))
        if self.U.shape != self.K.shape:
            raise ValueError("amplitudes and wavevectors must both have shape (n, 4)")
        self.G = np.zeros((4, 4)) if linear is None else np.asarray(linear, dtype=float)
        self.c = np.zeros(4) if offset is None else np.asarray(offset, dtype=float)

    def _phase(self, x):
        return np.exp(1j * np.einsum("...a,na->...n", np.asarray(x, float), self.K))

    def __call__(self, x):
        x = np.asarray(x, float)
        w = self._phase(x)
        return self.c + x @ self.G.T + np.einsum("...n,na->...a", w, self.U).real

    def jacobian(self, x):
        w = self._phase(x)
        osc = np.einsum("...n,na,nb->...ab", 1j * w, self.U, self.K).real
        return self.G + osc

    def hessian(self, x):
        w = self._phase(x)
        return np.einsum("...n,na,nb,nc->...abc", -w, self.U, self.K, self.K).real


class FunctionField(DisplacementField):
    """Wrap a callable; missing derivatives fall back to central differences."""

    def __init__(self, fun, jac=None, hess=None, step=1e-5):
        self.fun, self.jac, self.hess, self.step = fun, jac, hess, step

    def __call__(self, x):
        return self.fun(np.asarray(x, float))

    def _diff(self, f, x):
        x = np.asarray(x, float)
        cols = []
        for b in range(4):
            e = np.zeros(4)
            e[b] = self.step
            cols.append((f(x + e) - f(x - e)) / (2 * self.step))
        return np.stack(cols, axis=-1)

    def jacobian(self, x):
        if self.jac is not None:
            return self.jac(np.asarray(x, float))
        return self._diff(self.fun, x)

    def hessian(self, x):
        if self.hess is not None:
            return self.hess(np.asarray(x, float))
        return self._diff(self.jacobian, x)


class ZeroField(DisplacementField):
    def __call__(self, x):
        return np.zeros(np.shape(x))

    def jacobian(self, x):
        return np.zeros(np.shape(x) + (4,))

    def hessian(self, x):
        return np.zeros(np.shape(x) + (4, 4))


def random_trig_field(rng, n_modes=3, amplitude=0.05, max_wavenumber=1, periods=None):
    """Random smooth field; with ``periods`` the wave numbers fit the torus."""
    U = amplitude * (rng.standard_normal((n_modes, 4)) + 1j * rng.standard_normal((n_modes, 4)))
    n = rng.integers(-max_wavenumber, max_wavenumber + 1, size=(n_modes, 4))
    n[np.all(n == 0, axis=1), 0] = 1
    if periods is None:
        K = rng.uniform(-max_wavenumber, max_wavenumber, size=(n_modes, 4))
    else:
        K = 2 * np.pi * n / np.asarray(periods, float)
    return TrigField(U, K)


class TrigScalar:
    """p(x) = const + b . x + sum_j Re[c_j exp(i K_j . x)]."""

    def __init__(self, coeffs=None, wavevectors=None, slope=None, const=0.0):
        self.C = np.zeros(0, complex) if coeffs is None else np.atleast_1d(
            np.asarray(coeffs, dtype=complex))
        self.K = np.zeros((0, 4)) if wavevectors is None else np.atleast_2d(
            np.asarray(wavevectors, dtype=float))
        self.b = np.zeros(4) if slope is None else np.asarray(slope, dtype=float)
        self.const = float(const)

    def _phase(self, y):
        return np.exp(1j * np.einsum("...a,na->...n", np.asarray(y, float), self.K))

    def __call__(self, y):
        y = np.asarray(y, float)
        return self.const + y @ self.b + (self._phase(y) @ self.C).real

    def gradient(self, y):
        w = self._phase(y)
        return self.b + np.einsum("...n,n,na->...a", 1j * w, self.C, self.K).real
