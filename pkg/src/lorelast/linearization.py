"""Linearized field equations on a periodic torus.

Unknowns are a covector field A and a scalar p~.  The linearized operator is

    Lin(A, p~) = (delta d A - 2 Ric(A) + d p~,  delta A),

with delta A = -d^a A_a and (delta F)_a = d^b F_ab.  On flat space Ric = 0
and the first component is Maxwell's operator in Lorenz-type gauge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .grid import Grid4, SampledField, band_limited_field
from .kinematics import linearization_report  # noqa: F401  (re-exported)
from .tensor_core import MINKOWSKI


@dataclass
class LinearizedContext:
    grid: Grid4
    method: str = "spectral"
    g: object = MINKOWSKI
    ricci: np.ndarray = field(default=None)   # Ric_ab, constant or per site

    def ric(self):
        return np.zeros((4, 4)) if self.ricci is None else np.asarray(self.ricci)


def d0(ctx, f):
    return f.gradient(ctx.method)


def d1(ctx, A):
    """(dA)_mn = d_m A_n - d_n A_m."""
    T = A.gradient(ctx.method)            # T[..., n, m] = d_m A_n
    return T.apply(lambda P: np.swapaxes(P, -1, -2) - P)


def delta1(ctx, A):
    """delta A = -g^{mn} d_m A_n."""
    Gi = ctx.g.inverse
    return A.gradient(ctx.method).apply(lambda P: -np.einsum("mn,...nm->...", Gi, P))


def delta2(ctx, F):
    """(delta F)_a = g^{bm} d_m F_ab."""
    Gi = ctx.g.inverse
    return F.gradient(ctx.method).apply(lambda P: np.einsum("bm,...abm->...a", Gi, P))


def ptilde_from_pressure(p):
    """Rescaled scalar p~ = -p/2 used by the linearized system."""
    return p * -0.5


def pressure_from_ptilde(ptilde):
    return ptilde * -2.0


def apply_lin(ctx, A, ptilde):
    R = ctx.ric() @ ctx.g.inverse
    ric_term = A.apply(lambda P: np.einsum("...ab,...b->...a", R, P))
    first = delta2(ctx, d1(ctx, A)) - ric_term * 2.0 + d0(ctx, ptilde)
    return first, delta1(ctx, A)


def l2_inner(ctx, X, Y, k):
    """Rectangle-rule <X, Y> for periodic k-forms (k = 0, 1, 2), conjugating X."""
    if not (X.is_periodic and Y.is_periodic):
        raise ValueError("L2 pairing needs periodic fields")
    Gi = ctx.g.inverse
    x, y = X.periodic, Y.periodic
    if k == 0:
        dens = np.conj(x) * y
    elif k == 1:
        dens = np.einsum("...a,ab,...b->...", np.conj(x), Gi, y)
    elif k == 2:
        dens = 0.5 * np.einsum("...ab,ac,bd,...cd->...", np.conj(x), Gi, Gi, y)
    else:
        raise ValueError("k must be 0, 1 or 2")
    return ctx.grid.integrate(dens) * ctx.g.density


def pair(ctx, X, Y):
    """Pairing of (covector, scalar) pairs."""
    return l2_inner(ctx, X[0], Y[0], 1) + l2_inner(ctx, X[1], Y[1], 0)


def random_pair(ctx, rng, max_mode=2):
    A = band_limited_field(ctx.grid, rng, (4,), max_mode)
    p = band_limited_field(ctx.grid, rng, (), max_mode)
    return A, p


def self_adjointness_error(ctx, rng, n_pairs=5, max_mode=2):
    """Max relative |<Lin x, y> - <x, Lin y>| over random band-limited pairs."""
    worst = 0.0
    for _ in range(n_pairs):
        X, Y = random_pair(ctx, rng, max_mode), random_pair(ctx, rng, max_mode)
        lhs = pair(ctx, apply_lin(ctx, *X), Y)
        rhs = pair(ctx, X, apply_lin(ctx, *Y))
        worst = max(worst, abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300))
    return worst


def adjointness_error(ctx, rng, n_pairs=5, max_mode=2):
    """Max relative error of <d f, A> = <f, delta A> and <d A, F> = <A, delta F>."""
    worst = 0.0
    for _ in range(n_pairs):
        f = band_limited_field(ctx.grid, rng, (), max_mode)
        A = band_limited_field(ctx.grid, rng, (4,), max_mode)
        B = band_limited_field(ctx.grid, rng, (4,), max_mode)
        F = d1(ctx, B)    # any 2-form will do; a closed one keeps it simple
        F = F + band_limited_field(ctx.grid, rng, (4, 4), max_mode).apply(
            lambda P: P - np.swapaxes(P, -1, -2))
        for lhs, rhs in ((l2_inner(ctx, d0(ctx, f), A, 1), l2_inner(ctx, f, delta1(ctx, A), 0)),
                         (l2_inner(ctx, d1(ctx, A), F, 2), l2_inner(ctx, A, delta2(ctx, F), 1))):
            worst = max(worst, abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300))
    return worst


# ---------------------------------------------------------------- Maxwell check

@dataclass
class LorenzWave:
    A: SampledField        # covector potential (with a secular part)
    ptilde: SampledField
    current: SampledField  # J = -d p~
    k: np.ndarray


def lorenz_gauge_wave(grid, n=(1, 2, 2, 3), ell=(0.0, 0.0, 0.0, 1.0), g=MINKOWSKI):
    """Exact solution of delta d A = J, delta A = 0 with J = -d cos(k.x).

    k = 2 pi n / L must be lightlike.  The potential is
    A = [(ell.x) cos(k.x) k - sin(k.x) ell] / (2 g^{-1}(ell, k)).
    """
    k = 2 * np.pi * np.asarray(n, float) / np.asarray(grid.periods)
    if abs(g.codot(k, k)) > 1e-12 * np.dot(k, k):
        raise ValueError(f"wave covector {k} is not lightlike on this torus")
    ell = np.asarray(ell, float)
    lk = g.codot(ell, k)
    if abs(lk) < 1e-12:
        raise ValueError("ell must not be orthogonal to k")
    x = grid.points()
    phase = x @ k
    per = -np.sin(phase)[..., None] * ell / (2 * lk)
    sec = np.cos(phase)[..., None] * k / (2 * lk)
    A = SampledField(grid, per, [(ell, sec)])
    ptilde = SampledField(grid, np.cos(phase))
    current = SampledField(grid, np.sin(phase)[..., None] * k)
    return LorenzWave(A, ptilde, current, k)


def maxwell_residual(ctx, wave):
    """(sup |delta d A - J|, sup |delta A|) on the grid sites."""
    r = delta2(ctx, d1(ctx, wave.A)) - wave.current
    return r.sup_norm(), delta1(ctx, wave.A).sup_norm()


# ---------------------------------------------------------------- principal symbol

def principal_symbol(xi, g=MINKOWSKI):
    """5x5 symbol [[|xi|^2 I - xi (x) xi^sharp, i xi], [-i xi^sharp, 0]] (batched)."""
    xi = np.asarray(xi, float)
    xs = xi @ g.inverse
    n2 = np.einsum("...a,...a->...", xi, xs)
    M = np.zeros(xi.shape[:-1] + (5, 5), complex)
    M[..., :4, :4] = n2[..., None, None] * np.eye(4) - xi[..., :, None] * xs[..., None, :]
    M[..., :4, 4] = 1j * xi
    M[..., 4, :4] = -1j * xs
    return M


def _bareiss(M):
    """Fraction-free elimination on an object array of Python ints, shape (N, n, n)."""
    M = M.copy()
    N, n, _ = M.shape
    sign = np.ones(N, dtype=object)
    prev = np.ones(N, dtype=object)
    for k in range(n - 1):
        for s in np.nonzero(M[:, k, k] == 0)[0]:
            nz = [r for r in range(k + 1, n) if M[s, r, k] != 0]
            if not nz:
                sign[s] = 0
                M[s, k, k] = 1
                continue
            r = nz[0]
            M[s, [k, r]] = M[s, [r, k]]
            sign[s] = -sign[s]
        piv = M[:, k, k]
        sub = M[:, k + 1:, k + 1:]
        M[:, k + 1:, k + 1:] = (sub * piv[:, None, None]
                                - M[:, k + 1:, k, None] * M[:, k, None, k + 1:]) // prev[:, None, None]
        prev = piv
    return sign * M[:, n - 1, n - 1]


def _integer_scaled(xi):
    """Write each row as s * (integer vector) with s a power of two; returns (ints, log2 s)."""
    mant, expo = np.frexp(xi)
    m_int = (mant * 2.0 ** 53).astype(np.int64)
    e = expo.astype(np.int64) - 53
    emin = np.where(m_int == 0, np.iinfo(np.int64).max, e).min(axis=-1)
    emin = np.where(emin == np.iinfo(np.int64).max, 0, emin)
    ints = np.empty(xi.shape, dtype=object)
    for idx in np.ndindex(xi.shape):
        shift = int(e[idx] - emin[idx[:-1]])
        ints[idx] = int(m_int[idx]) << shift if m_int[idx] else 0
    return ints, emin


def _symbol_det_ints(xi, g=MINKOWSKI):
    """Exact determinant of the principal symbol and of -|xi|^8 as integers.

    Conjugating by diag(1, 1, 1, 1, -i) makes the symbol real; it is
    homogeneous of degree 8, so xi = 2^e n with integer n reduces the
    problem to an integer matrix handled by Bareiss elimination.  The metric
    must be diagonal with entries +-1.  Values are in units of 2^(8 e).
    """
    sig = np.diag(g.inverse)
    if not (np.allclose(g.inverse, np.diag(sig)) and np.all(np.abs(sig) == 1)):
        raise ValueError("exact symbol determinant needs a diagonal +-1 metric")
    sig = [int(v) for v in sig]
    xi = np.atleast_2d(np.asarray(xi, float))
    flat_xi = xi.reshape(-1, 4)
    n, e = _integer_scaled(flat_xi)
    N = n.shape[0]
    ns = n * np.array(sig, dtype=object)
    n2 = (n * ns).sum(axis=1)
    M = np.zeros((N, 5, 5), dtype=object)
    for a in range(4):
        for b in range(4):
            M[:, a, b] = (n2 if a == b else 0) - n[:, a] * ns[:, b]
        M[:, a, 4] = n[:, a]
        M[:, 4, a] = ns[:, a]
    det = _bareiss(M)
    return det, -(n2 ** 4), e, xi.shape[:-1]


def symbol_determinant(xi, g=MINKOWSKI):
    """Determinant of the principal symbol and -|xi|^8, both rounded once to float."""
    det, expected, e, shape = _symbol_det_ints(xi, g)
    out = np.array([float(Fraction(int(d)) * Fraction(2) ** (8 * int(k))) for d, k in zip(det, e)])
    ref = np.array([float(Fraction(int(d)) * Fraction(2) ** (8 * int(k))) for d, k in zip(expected, e)])
    return out.reshape(shape), ref.reshape(shape)


def symbol_determinant_error(xi, g=MINKOWSKI):
    """|det / (-|xi|^8) - 1|, the ratio formed exactly before rounding."""
    det, expected, _, shape = _symbol_det_ints(xi, g)
    out = [float(abs(Fraction(int(d) - int(x), int(x)))) if x != 0 else float("inf")
           for d, x in zip(det, expected)]
    return np.array(out).reshape(shape)


# ---------------------------------------------------------------- quadratic Lagrangian

def quadratic_lagrangian_identity(A, x, g=MINKOWSKI):
    """Pointwise check of L2 = (1/2) anti.anti - 2 Ric(A, A) + d_k B^k on flat space (Ric = 0).

    L2 = -2 (div A)^2 + (1/2) sym.sym with sym_ab = d_a A_b + d_b A_a and
    B^k = -2 [A^k div A - A^c d_c A^k].  Returns the residual array.
    """
    G, Gi = g.components, g.inverse
    Av = A(x)
    J = A.jacobian(x)                                # J[k, c] = d_c A^k
    H = A.hessian(x)
    Jl = G @ J                                       # Jl[b, a] = d_a A_b
    dA = np.swapaxes(Jl, -1, -2)                     # dA[a, b] = d_a A_b
    sym, anti = dA + Jl, dA - Jl

    def sq(T):
        return np.einsum("...ab,ac,bd,...cd->...", T, Gi, Gi, T)

    div = np.trace(J, axis1=-2, axis2=-1)
    L2 = -2 * div ** 2 + 0.5 * sq(sym)
    ddiv = np.einsum("...ccm->...m", H)
    divB = -2 * (div * div + np.einsum("...k,...k->...", Av, ddiv)
                 - np.einsum("...ck,...kc->...", J, J)
                 - np.einsum("...c,...kck->...", Av, H))
    return L2 - (0.5 * sq(anti) + divB)
