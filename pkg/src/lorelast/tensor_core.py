"""Lorentzian linear algebra in four dimensions.

Index conventions: coordinates are (x1, x2, x3, x4) with x4 timelike and the
Minkowski metric diag(1, 1, 1, -1).  A vector field component array has a
trailing axis of length 4; a k-form is an antisymmetric array with k trailing
axes.  Mixed tensors ``M[a, b]`` carry the upper index first.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegreeMismatch, LorelastError

TOL_EXACT = 1e-12
TOL_EIGEN = 1e-9
TOL_FD = 1e-6


def _perm_sign(p):
    p = list(p)
    sign = 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def levi_civita(n=4):
    """Permutation symbol with eps[0, 1, ..., n-1] = +1."""
    eps = np.zeros((n,) * n)
    for p in itertools.permutations(range(n)):
        eps[p] = _perm_sign(p)
    return eps


EPS4 = levi_civita(4)


@dataclass(frozen=True)
class Metric4:
    """Constant symmetric metric of signature (+, +, +, -)."""

    components: np.ndarray
    inverse: np.ndarray = field(init=False, repr=False)
    density: float = field(init=False)

    def __post_init__(self):
        g = np.asarray(self.components, dtype=float)
        if g.shape != (4, 4) or not np.allclose(g, g.T, atol=TOL_EXACT):
            raise LorelastError("metric must be a symmetric 4x4 matrix")
        w = np.linalg.eigvalsh(g)
        if not (np.sum(w < 0) == 1 and np.sum(w > 0) == 3):
            raise LorelastError(f"metric signature is not (+,+,+,-): {w}")
        object.__setattr__(self, "components", g)
        object.__setattr__(self, "inverse", np.linalg.inv(g))
        object.__setattr__(self, "density", math.sqrt(-np.linalg.det(g)))

    def dot(self, u, v):
        """g(u, v) for vectors (bilinear, no conjugation)."""
        return np.einsum("...a,ab,...b->...", u, self.components, v)

    def codot(self, p, q):
        """g^{-1}(p, q) for covectors."""
        return np.einsum("...a,ab,...b->...", p, self.inverse, q)


MINKOWSKI = Metric4(np.diag([1.0, 1.0, 1.0, -1.0]))


def flat(v, g=MINKOWSKI):
    """Lower the index of a vector (or of the last axis of any tensor)."""
    return np.asarray(v) @ g.components


def sharp(w, g=MINKOWSKI):
    """Raise the index of a covector."""
    return np.asarray(w) @ g.inverse


def _degree(Q, k):
    Q = np.asarray(Q)
    if k is None:
        k = Q.ndim
    if Q.ndim < k or any(s != 4 for s in Q.shape[Q.ndim - k:]):
        raise DegreeMismatch(f"array of shape {Q.shape} is not a {k}-form")
    return Q, k


def antisymmetrize(T, k=None):
    """Projection onto the alternating part of the last k axes."""
    T, k = _degree(T, k)
    batch = T.ndim - k
    out = np.zeros(T.shape, dtype=np.result_type(T, float))
    for p in itertools.permutations(range(k)):
        axes = list(range(batch)) + [batch + i for i in p]
        out += _perm_sign(p) * np.transpose(T, axes)
    return out / math.factorial(k)


def wedge(A, B, k=None, l=None):
    """Exterior product; for 1-forms (A^B)_ab = A_a B_b - A_b B_a."""
    A, k = _degree(A, k)
    B, l = _degree(B, l)
    batch_a, batch_b = A.shape[: A.ndim - k], B.shape[: B.ndim - l]
    shape = np.broadcast_shapes(batch_a, batch_b)
    A = A.reshape(batch_a + (4,) * k + (1,) * l)
    B = B.reshape(batch_b + (1,) * k + (4,) * l)
    T = np.broadcast_to(A * B, shape + (4,) * (k + l))
    coef = math.factorial(k + l) / (math.factorial(k) * math.factorial(l))
    return coef * antisymmetrize(T, k + l)


def raise_all(Q, k, g=MINKOWSKI):
    for i in range(k):
        Q = np.moveaxis(np.moveaxis(Q, -k + i, -1) @ g.inverse, -1, -k + i)
    return Q


def hodge(Q, g=MINKOWSKI, k=None):
    """Hodge star of a k-form.

    (*Q)_{b_{k+1}..b_4} = (1/k!) rho Q^{a_1..a_k} eps_{a_1..a_k b_{k+1}..b_4}
    with eps_1234 = +1.
    """
    Q, k = _degree(Q, k)
    Qu = raise_all(Q, k, g)
    letters = "abcd"
    sub = "..." + letters[:k] + "," + letters + "->..." + letters[k:]
    return g.density / math.factorial(k) * np.einsum(sub, Qu, EPS4)


def inner(Q, T, g=MINKOWSKI, k=None):
    """<Q, T> = (1/k!) conj(Q)_{a..} T_{b..} g^{ab}.. (sesquilinear, conjugate first)."""
    Q, k = _degree(Q, k)
    T = np.asarray(T)
    Tu = raise_all(T, k, g)
    axes = tuple(range(-k, 0))
    return np.sum(np.conj(Q) * Tu, axis=axes) / math.factorial(k)


def det3(M):
    """Cofactor-expanded 3x3 determinant; keeps exact zeros exact."""
    return (M[..., 0, 0] * (M[..., 1, 1] * M[..., 2, 2] - M[..., 1, 2] * M[..., 2, 1])
            - M[..., 0, 1] * (M[..., 1, 0] * M[..., 2, 2] - M[..., 1, 2] * M[..., 2, 0])
            + M[..., 0, 2] * (M[..., 1, 0] * M[..., 2, 1] - M[..., 1, 1] * M[..., 2, 0]))


_KEEP = [[j for j in range(4) if j != i] for i in range(4)]


def adjugate(M):
    """Classical adjugate of (batched) 4x4 matrices, adj(M) M = det(M) I."""
    M = np.asarray(M)
    adj = np.empty(M.shape, dtype=M.dtype if M.dtype.kind == "c" else float)
    for i in range(4):
        for j in range(4):
            minor = M[..., _KEEP[i], :][..., :, _KEEP[j]]
            adj[..., j, i] = (-1) ** (i + j) * det3(minor)
    return adj


def det4(M):
    M = np.asarray(M)
    out = 0.0
    for j in range(4):
        minor = M[..., 1:, :][..., :, _KEEP[j]]
        out = out + (-1) ** j * M[..., 0, j] * det3(minor)
    return out


def principal_invariants(M):
    """(e1, e2, e3, e4): coefficients of det(lambda I - M)."""
    M = np.asarray(M)
    e1 = np.trace(M, axis1=-2, axis2=-1)
    e2 = 0.5 * (e1 ** 2 - np.einsum("...ab,...ba->...", M, M))
    e3 = np.trace(adjugate(M), axis1=-2, axis2=-1)
    e4 = det4(M)
    return e1, e2, e3, e4


def char_poly(M):
    """Monic characteristic polynomial coefficients, highest degree first."""
    e1, e2, e3, e4 = principal_invariants(M)
    return np.array([1.0, -e1, e2, -e3, e4])


# ---------------------------------------------------------------- quartics

def _cbrt(z):
    z = complex(z)
    if z == 0:
        return 0j
    if z.imag == 0 and z.real < 0:
        return -((-z.real) ** (1 / 3)) + 0j
    return z ** (1 / 3)


def _quadratic(b, c):
    """Roots of x^2 + b x + c with the cancellation-free formula."""
    disc = np.sqrt(complex(b * b - 4 * c))
    if (np.conj(b) * disc).real < 0:
        disc = -disc
    q = -0.5 * (b + disc)
    if q == 0:
        return [0j, 0j]
    return [q, c / q]


def _cubic(b, c, d):
    """Roots of x^3 + b x^2 + c x + d (Cardano with complex arithmetic)."""
    if d == 0:
        return [0j] + _quadratic(b, c)
    s = b / 3
    P = c - b * b / 3
    Q = 2 * b ** 3 / 27 - b * c / 3 + d
    disc = np.sqrt(complex(Q * Q / 4 + P ** 3 / 27))
    u3 = -Q / 2 + disc
    if abs(-Q / 2 - disc) > abs(u3):
        u3 = -Q / 2 - disc
    u = _cbrt(u3)
    omega = complex(-0.5, math.sqrt(3) / 2)
    roots = []
    for k in range(3):
        uk = u * omega ** k
        vk = -P / (3 * uk) if uk != 0 else 0j
        roots.append(uk + vk - s)
    return roots


def _quartic(b, c, d, e):
    """Roots of x^4 + b x^3 + c x^2 + d x + e via a quadratic factorization."""
    if e == 0:
        return [0j] + _cubic(b, c, d)
    s0 = b / 4
    P = c - 3 * b * b / 8
    Q = d - b * c / 2 + b ** 3 / 8
    R = e - b * d / 4 + b * b * c / 16 - 3 * b ** 4 / 256
    scale = max(1.0, abs(P), abs(Q) ** (2 / 3), abs(R) ** 0.5)
    if abs(Q) <= 1e-14 * scale ** 1.5:
        ys = []
        for z in _quadratic(P, R):
            r = np.sqrt(complex(z))
            ys += [r, -r]
    else:
        zs = _cubic(2 * P, P * P - 4 * R, -Q * Q)
        z = max(zs, key=abs)
        sq = np.sqrt(z)
        t = (P + z - Q / sq) / 2
        u = (P + z + Q / sq) / 2
        ys = _quadratic(sq, t) + _quadratic(-sq, u)
    return [y - s0 for y in ys]


def _polish(coeffs, x):
    """One Newton step, kept only if it lowers |p(x)|."""
    p = np.polyval(coeffs, x)
    dp = np.polyval(np.polyder(coeffs), x)
    if dp == 0:
        return x
    y = x - p / dp
    return y if abs(np.polyval(coeffs, y)) < abs(p) else x


def quartic_roots(coeffs):
    """Roots of a monic quartic [1, b, c, d, e]; exact zero roots are deflated."""
    coeffs = np.asarray(coeffs, dtype=complex)
    _, b, c, d, e = coeffs
    roots = _quartic(b, c, d, e)
    return np.array([_polish(coeffs, r) for r in roots])


def eigenvalues(M, real_tol=TOL_EIGEN):
    """Eigenvalues of a 4x4 matrix from its characteristic polynomial.

    Roots whose imaginary part is below ``real_tol * (1 + |root|)`` are
    returned as real numbers when every root qualifies.  Output is sorted by
    (real part, imaginary part).
    """
    M = np.asarray(M)
    if M.shape != (4, 4):
        raise DegreeMismatch("eigenvalues expects a single 4x4 matrix")
    cp = char_poly(M)
    roots = quartic_roots(cp)
    roots = np.array(sorted(roots, key=lambda z: (round(z.real, 12), z.imag)))
    if np.all(np.abs(roots.imag) <= real_tol * (1 + np.abs(roots))):
        return roots.real
    return roots


def charpoly_residual(M, lam):
    """Relative backward error |p(lam)| / sum |c_k| |lam|^k."""
    cp = char_poly(M)
    lam = np.asarray(lam, dtype=complex)
    num = np.abs(np.polyval(cp, lam))
    den = np.polyval(np.abs(cp), np.abs(lam))
    return np.divide(num, den, out=np.zeros_like(num), where=num > 0)


# ---------------------------------------------------------------- Lorentz maps

def is_lorentz(L, g=MINKOWSKI, tol=1e-10):
    L = np.asarray(L)
    return np.allclose(L.T @ g.components @ L, g.components, atol=tol)


def is_proper_orthochronous(L, g=MINKOWSKI, tol=1e-10):
    return is_lorentz(L, g, tol) and np.linalg.det(L) > 0 and L[3, 3] > 0


def boost(direction, rapidity):
    n = np.asarray(direction, dtype=float)
    n = n / np.linalg.norm(n)
    ch, sh = math.cosh(rapidity), math.sinh(rapidity)
    L = np.eye(4)
    L[:3, :3] += (ch - 1) * np.outer(n, n)
    L[:3, 3] = sh * n
    L[3, :3] = sh * n
    L[3, 3] = ch
    return L


def random_rotation(rng):
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    L = np.eye(4)
    L[:3, :3] = q
    return L


def random_lorentz(rng, max_rapidity=1.0):
    """Random element of SO+(3,1): rotation, boost, rotation."""
    r = rng.uniform(0, max_rapidity)
    B = boost(rng.standard_normal(3), r)
    return random_rotation(rng) @ B @ random_rotation(rng)
