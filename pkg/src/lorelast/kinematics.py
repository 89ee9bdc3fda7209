"""Deformation gradient, strain, its invariants and the Lorentzian polar decomposition."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.linalg

from .errors import NotADiffeomorphism, PolarUndefined
from .fields import DisplacementField  # noqa: F401  (re-exported)
from .tensor_core import MINKOWSKI, TOL_EIGEN, det4, eigenvalues, principal_invariants

I4 = np.eye(4)


class StrainInvariants(NamedTuple):
    e1: np.ndarray
    e2: np.ndarray
    e3: np.ndarray
    e4: np.ndarray


def deformation_gradient(A, x, check=True):
    """D = I + dA/dx at the points x."""
    D = I4 + A.jacobian(x)
    if check:
        det = det4(D)
        if np.any(det <= 0):
            raise NotADiffeomorphism(f"det D = {np.min(det):.3g} <= 0")
    return D


def pullback_metric(D, g=MINKOWSKI):
    """h = D^T g D."""
    D = np.asarray(D)
    return np.swapaxes(D, -1, -2) @ g.components @ D


def strain_from_jacobian(J, g=MINKOWSKI):
    """S = g^{-1} h - I written as J + g^{-1}J^T g + g^{-1}J^T g J."""
    J = np.asarray(J)
    JtG = g.inverse @ np.swapaxes(J, -1, -2) @ g.components
    return J + JtG + JtG @ J


def strain(D, g=MINKOWSKI):
    return strain_from_jacobian(np.asarray(D) - I4, g)


def invariants(S):
    """Coefficients of det(lambda I - S): e1 = tr S, ..., e4 = det S."""
    return StrainInvariants(*principal_invariants(S))


def power_sums(S, kmax=4):
    out, P = [], np.asarray(S)
    for _ in range(kmax):
        out.append(np.trace(P, axis1=-2, axis2=-1))
        P = P @ S
    return out


def invariants_from_power_sums(S):
    """Newton-identity route, e_k as polynomials in p_k = tr S^k."""
    p1, p2, p3, p4 = power_sums(S)
    e2 = (p1 ** 2 - p2) / 2
    e3 = (p1 ** 3 - 3 * p1 * p2 + 2 * p3) / 6
    e4 = (p1 ** 4 - 6 * p1 ** 2 * p2 + 3 * p2 ** 2 + 8 * p1 * p3 - 6 * p4) / 24
    return StrainInvariants(p1, e2, e3, e4)


def volume_residual(S):
    """det(I + S) - 1 = e1 + e2 + e3 + e4, i.e. (det D)^2 - 1 for det g fixed."""
    e = invariants(S)
    return e.e1 + e.e2 + e.e3 + e.e4


# ---------------------------------------------------------------- polar decomposition

@dataclass
class PolarResult:
    U: np.ndarray          # Lorentz part, mixed indices
    V: np.ndarray          # g-symmetric stretch, mixed indices
    F: np.ndarray          # rotation 2-form g log U, lowered indices
    C_eigenvalues: np.ndarray


def _real_if_close(M, tol=1e-10):
    M = np.asarray(M)
    if np.iscomplexobj(M) and np.max(np.abs(M.imag), initial=0) <= tol * max(1.0, np.max(np.abs(M))):
        return M.real
    return M


def _on_negative_axis(lam, tol):
    lam = np.atleast_1d(lam).astype(complex)
    return np.any((np.abs(lam.imag) <= tol * (1 + np.abs(lam))) & (lam.real <= tol))


def polar_decompose(D, g=MINKOWSKI, tol=1e-6):
    """D = U V with U in O(g), V g-symmetric and F = g log U antisymmetric.

    Raises PolarUndefined when C = g^{-1} D^T g D has an eigenvalue on the
    closed negative real axis (no principal square root), or when U has one
    (no principal logarithm).  ``tol`` absorbs the sqrt(eps) spread of
    multiple roots.
    """
    D = np.asarray(D, dtype=float)
    C = g.inverse @ D.T @ g.components @ D
    lam = eigenvalues(C, real_tol=TOL_EIGEN)
    if _on_negative_axis(lam, tol):
        raise PolarUndefined(f"C has eigenvalues on the closed negative axis: {lam}")
    V = _real_if_close(scipy.linalg.sqrtm(C))
    U = D @ np.linalg.inv(V)
    lamU = np.linalg.eigvals(U)
    if _on_negative_axis(lamU, tol):
        raise PolarUndefined(f"U has eigenvalues on the closed negative axis: {lamU}")
    with np.errstate(all="ignore"):      # logm's norm estimator divides by zero-sized columns
        logU = scipy.linalg.logm(U)
    F = g.components @ _real_if_close(logU)
    return PolarResult(U=_real_if_close(U), V=V, F=_real_if_close(F), C_eigenvalues=lam)


# ---------------------------------------------------------------- linearization

def loglog_slope(s, err):
    s, err = np.asarray(s, float), np.asarray(err, float)
    return np.polyfit(np.log(s), np.log(err), 1)[0]


def linearization_report(J, scales=(1e-2, 5e-3, 2.5e-3, 1.25e-3), g=MINKOWSKI, exact_floor=1e-14):
    """Compare D, U, F, V, S, det h/det g at D = I + s J with first-order formulas.

    Returns {name: slope} for log(error) against log(s).  A quantity whose
    first-order formula is exact (D itself) reports slope ``inf`` when every
    error sits below ``exact_floor * s``; callers treat that as passing.
    """
    J = np.asarray(J, float)
    G = g.components
    errs = {k: [] for k in ("D", "U", "F", "V", "S", "det")}
    for s in scales:
        Js = s * J
        Jl = G @ Js                          # Jl[a, b] = d_b A_a
        sym, anti = Jl + Jl.T, Jl - Jl.T
        D = I4 + Js
        pol = polar_decompose(D, g)
        S = strain(D, g)
        detratio = np.linalg.det(pullback_metric(D, g)) / np.linalg.det(G)
        errs["D"].append(np.abs(G @ D - (G + Jl)).max())
        errs["U"].append(np.abs(G @ pol.U - (G + 0.5 * anti)).max())
        errs["F"].append(np.abs(pol.F - 0.5 * anti).max())
        errs["V"].append(np.abs(G @ pol.V - (G + 0.5 * sym)).max())
        errs["S"].append(np.abs(G @ S - sym).max())
        errs["det"].append(abs(detratio - (1 + 2 * np.trace(Js))))
    out = {}
    for k, e in errs.items():
        e = np.asarray(e)
        if np.all(e <= exact_floor * np.asarray(scales)):
            out[k] = float("inf")
        else:
            out[k] = float(loglog_slope(scales, np.maximum(e, 1e-300)))
    return out, errs
