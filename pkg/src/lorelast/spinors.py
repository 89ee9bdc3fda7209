"""Two-component spinors, polarized 2-forms and the Dirac operators.

Conventions: ``SIGMA[alpha]`` is sigma^alpha_{dot a b} (spinor indices
down) and ``SIGMA_BAR[alpha]`` is sigma^{alpha dot a b} = eps eps sigma.
All four epsilon tensors equal [[0, 1], [-1, 0]].

A polarized 2-form with *F = -iF corresponds to a trace-free undotted
rank-two spinor zeta, and one with *F = +iF to a dotted theta:

    (F_-)^{ab} = -i sigma^a_{dot c d} zeta^d_e sigma^{b dot c e}
    (F_+)^{ab} =  i sigma^{a dot d c} theta_{dot d}^{dot e} sigma^b_{dot e c}

If the form is degenerate the rank-two spinor is a square,
zeta = xi xi^T eps or theta = eta eta^T eps, fixing the spinor up to sign.
The sign is normalized so that the first nonzero component has argument in
(-pi/2, pi/2].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotDegenerate, NotPolarized, SignUnresolvable
from .solutions import complex_form_massive, complex_form_massless
from .tensor_core import MINKOWSKI, hodge

EPS2 = np.array([[0.0, 1.0], [-1.0, 0.0]])

SIGMA = np.array([
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
    [[1, 0], [0, 1]],
], dtype=complex)

SIGMA_BAR = np.einsum("ac,bd,kcd->kab", EPS2, EPS2, SIGMA)

_TRACE_FREE = [np.array([[1, 0], [0, -1]], complex),
               np.array([[0, 1], [0, 0]], complex),
               np.array([[0, 0], [1, 0]], complex)]


def form_from_undotted(zeta, g=MINKOWSKI):
    """Lowered F_- built from an undotted trace-free rank-two spinor."""
    Fup = -1j * np.einsum("kab,bc,lac->kl", SIGMA, zeta, SIGMA_BAR)
    return g.components @ Fup @ g.components


def form_from_dotted(theta, g=MINKOWSKI):
    """Lowered F_+ built from a dotted trace-free rank-two spinor."""
    Fup = 1j * np.einsum("kba,bc,lca->kl", SIGMA_BAR, theta, SIGMA)
    return g.components @ Fup @ g.components


def _invert(F, builder, g, tol):
    F = np.asarray(F, complex)
    M = np.stack([builder(b, g).ravel() for b in _TRACE_FREE], axis=1)
    coef = np.linalg.lstsq(M, F.ravel(), rcond=None)[0]
    resid = np.abs(M @ coef - F.ravel()).max()
    if resid > tol * max(np.abs(F).max(), 1e-300):
        raise NotPolarized(f"2-form is not in the image (residual {resid:.3g})")
    return sum(c * b for c, b in zip(coef, _TRACE_FREE))


def undotted_from_form(F, g=MINKOWSKI, tol=1e-10):
    """zeta with form_from_undotted(zeta) = F; F must satisfy *F = -iF."""
    return _invert(F, form_from_undotted, g, tol)


def dotted_from_form(F, g=MINKOWSKI, tol=1e-10):
    """theta with form_from_dotted(theta) = F; F must satisfy *F = +iF."""
    return _invert(F, form_from_dotted, g, tol)


def normalize_sign(s, slack=1e-9):
    """Pick +-s so the first nonzero component has argument in (-pi/2, pi/2].

    ``slack`` widens the upper end so round-off does not flip a purely
    imaginary leading component.
    """
    s = np.asarray(s, complex)
    scale = np.abs(s).max()
    for z in s:
        if abs(z) > 1e-12 * scale:
            ang = np.angle(z)
            return s if -np.pi / 2 + slack < ang <= np.pi / 2 + slack else -s
    return s


def factor_square(L, tol=1e-10):
    """Rank-one spinor u with L = u u^T eps (sign normalized).

    With L = [[-u1 u2, u1^2], [-u2^2, u1 u2]] the larger of |L01|, |L10|
    fixes one component by a square root; the other follows from L00.
    """
    L = np.asarray(L, complex)
    scale = max(np.abs(L).max(), 1e-300)
    if abs(np.linalg.det(L)) > tol * scale ** 2:
        raise NotDegenerate(f"det = {np.linalg.det(L):.3g} is not zero")
    if abs(L[0, 1]) >= abs(L[1, 0]):
        u1 = np.sqrt(L[0, 1])
        u2 = -L[0, 0] / u1 if u1 != 0 else 0j
    else:
        u2 = np.sqrt(-L[1, 0])
        u1 = -L[0, 0] / u2
    return normalize_sign(np.array([u1, u2]))


def square_undotted(xi):
    return np.outer(xi, xi) @ EPS2


square_dotted = square_undotted


def polarized_parts(F, g=MINKOWSKI):
    """(F_+, F_-) = ((F - i*F)/2, (F + i*F)/2) with *F_+- = +-i F_+-."""
    H = hodge(np.asarray(F, complex), g, k=2)
    return (F - 1j * H) / 2, (F + 1j * H) / 2


def _check_degenerate(F, tol):
    scale = max(np.abs(F).max(), 1e-300)
    if abs(np.linalg.det(F)) > tol * scale ** 4:
        raise NotDegenerate(f"det F = {np.linalg.det(F):.3g}")


def spinor_from_minus(F, g=MINKOWSKI, tol=1e-10):
    """Undotted xi, defined up to sign, from a degenerate F_- (*F = -iF)."""
    _check_degenerate(F, tol)
    return factor_square(undotted_from_form(F, g, tol), tol)


def spinor_from_plus(F, g=MINKOWSKI, tol=1e-10):
    """Dotted eta, defined up to sign, from a degenerate F_+ (*F = +iF)."""
    _check_degenerate(F, tol)
    return factor_square(dotted_from_form(F, g, tol), tol)


def bispinor_from_form(F, g=MINKOWSKI, tol=1e-10):
    """(xi, eta) from a non-polarized F with degenerate parts, xi . conj(eta) > 0.

    The contraction is xi^a conj(eta)_a; conj(eta) already carries a lower
    undotted index so no epsilon enters.
    """
    Fp, Fm = polarized_parts(F, g)
    xi = spinor_from_minus(Fm, g, tol)
    eta = spinor_from_plus(Fp, g, tol)
    s = xi @ np.conj(eta)
    size = np.linalg.norm(xi) * np.linalg.norm(eta)
    if abs(s) <= tol * size or abs(s.imag) > 1e-8 * abs(s):
        raise SignUnresolvable(f"xi . conj(eta) = {s:.3g} is not real and nonzero")
    if s.real < 0:
        eta = -eta
    return xi, eta


# ---------------------------------------------------------------- spinor fields

@dataclass(frozen=True)
class SpinorWave:
    """chi exp(i k.x); ``kind`` is 'undotted' (xi^a) or 'dotted' (eta_a)."""

    chi: np.ndarray
    k: np.ndarray
    kind: str

    def __call__(self, x):
        return np.exp(1j * (np.asarray(x, float) @ self.k))[..., None] * self.chi

    def derivative(self, x):
        """d_alpha of the field, shape (..., 4, 2)."""
        return 1j * self.k[:, None] * self(x)[..., None, :]


def massless_spinor(P, g=MINKOWSKI):
    """Square root of the complexified rotation form: xi (left) or eta (right)."""
    F0 = complex_form_massless(P)
    H = hodge(F0, g, k=2)
    scale = np.abs(F0).max()
    k = np.asarray(P.p, float) / 2
    if np.abs(H + 1j * F0).max() <= 1e-10 * scale:
        return SpinorWave(spinor_from_minus(F0, g), k, "undotted")
    if np.abs(H - 1j * F0).max() <= 1e-10 * scale:
        return SpinorWave(spinor_from_plus(F0, g), k, "dotted")
    raise NotPolarized("massless rotation form is not polarized")


def massive_bispinor(P, g=MINKOWSKI):
    xi, eta = bispinor_from_form(complex_form_massive(P), g)
    k = np.asarray(P.p, float) / 2
    return SpinorWave(xi, k, "undotted"), SpinorWave(eta, k, "dotted")


def dirac_left(field, x):
    """sigma^alpha_{dot a b} d_alpha xi^b."""
    return np.einsum("kab,...kb->...a", SIGMA, field.derivative(x))


def dirac_right(field, x):
    """sigma^{alpha dot b a} d_alpha eta_{dot b}."""
    return np.einsum("kba,...kb->...a", SIGMA_BAR, field.derivative(x))


def dirac_residual_massless(field, x):
    """Sup-norm over x of the massless Dirac operator matching the field's kind."""
    op = dirac_left if field.kind == "undotted" else dirac_right
    return float(np.abs(op(field, x)).max())


def dirac_residual_massive(xi, eta, m, x):
    """Sup-norms of -i sigma d xi - m eta and -i sigma_bar d eta - m xi."""
    r1 = -1j * dirac_left(xi, x) - m * eta(x)
    r2 = -1j * dirac_right(eta, x) - m * xi(x)
    return float(np.abs(r1).max()), float(np.abs(r2).max())
