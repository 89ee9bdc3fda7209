"""Poincare elements as 5x5 matrices, screw subgroups and their Weitzenbock torsion.

A Poincare element acts on points by x -> Lambda x + v, stored as
[[Lambda, v], [0, 1]] acting on (x, 1).  Screw-group elements are
parameterized by their translation q and rotate the (x1, x2) plane by an
angle theta(q):

    SG0+ : theta = +(q3 + q4)      SG0- : theta = -(q3 + q4)
    SGm  : theta = 2 m q4          T    : theta = 0 (translations only)

SG0+ is the group listed as right-handed in the group tables; it is the
symmetry group of the upper-sign massless solution A = a(cos t, sin t, 0, 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .tensor_core import EPS4, MINKOWSKI, is_proper_orthochronous


def poincare(L, v):
    M = np.eye(5)
    M[:4, :4] = L
    M[:4, 4] = v
    return M


def act(M, x):
    x = np.asarray(x, float)
    return x @ M[:4, :4].T + M[:4, 4]


def is_restricted(M, tol=1e-12):
    """Last row (0, 0, 0, 0, 1), Lambda in SO+(3,1)."""
    M = np.asarray(M)
    return (np.allclose(M[4], [0, 0, 0, 0, 1], atol=tol)
            and is_proper_orthochronous(M[:4, :4], tol=tol))


def rotation12(theta):
    L = np.eye(4)
    c, s = math.cos(theta), math.sin(theta)
    L[:2, :2] = [[c, -s], [s, c]]
    return L


@dataclass(frozen=True)
class ScrewGroup:
    kind: str          # 'SG0+', 'SG0-', 'SGm', 'T'
    m: float = 0.0

    def __post_init__(self):
        kind = {"right0": "SG0+", "left0": "SG0-", "massive": "SGm",
                "translations": "T"}.get(self.kind, self.kind)
        if kind not in ("SG0+", "SG0-", "SGm", "T"):
            raise ValueError(f"unknown screw group {self.kind!r}")
        if kind == "SGm" and not self.m > 0:
            raise ValueError("the massive screw group needs m > 0")
        object.__setattr__(self, "kind", kind)

    def angle(self, q):
        q = np.asarray(q, float)
        if self.kind == "SG0+":
            return q[..., 2] + q[..., 3]
        if self.kind == "SG0-":
            return -(q[..., 2] + q[..., 3])
        if self.kind == "SGm":
            return 2 * self.m * q[..., 3]
        return 0.0 * q[..., 3]

    def element(self, q):
        return poincare(rotation12(float(self.angle(q))), q)

    def transport_element(self, P, Q):
        """The unique element with element(P) = Q."""
        P, Q = np.asarray(P, float), np.asarray(Q, float)
        q = Q - P
        # theta only depends on q3, q4 which the rotation leaves alone
        R = rotation12(float(self.angle(q)))
        q[:2] = Q[:2] - R[:2, :2] @ P[:2]
        return self.element(q)


SG0_PLUS = ScrewGroup("SG0+")
SG0_MINUS = ScrewGroup("SG0-")
TRANSLATIONS = ScrewGroup("T")


def screw_element(G, q):
    return G.element(q)


def membership_residual(G, M):
    """Distance of a 5x5 matrix from the element of G with the same translation."""
    return float(np.abs(G.element(M[:4, 4]) - M).max())


def closure_residual(G, q1, q2):
    return membership_residual(G, G.element(q1) @ G.element(q2))


# ---------------------------------------------------------------- homogeneity

def invert_map(phi, y, x0=None, tol=1e-13, maxiter=50):
    """Newton inversion of x -> x + A(x) at the points y."""
    y = np.asarray(y, float)
    x = y.copy() if x0 is None else np.asarray(x0, float).copy()
    for _ in range(maxiter):
        r = x + phi(x) - y
        if np.abs(r).max() <= tol * max(1.0, np.abs(y).max()):
            return x
        D = np.eye(4) + phi.jacobian(x)
        x = x - np.linalg.solve(D, r[..., None])[..., 0]
    raise ArithmeticError("Newton inversion of phi did not converge")


def fit_affine(x, z):
    """5x5 affine map M with z_i = M (x_i, 1) in the least-squares sense."""
    X = np.hstack([x, np.ones((len(x), 1))])
    coef, *_ = np.linalg.lstsq(X, z, rcond=None)
    M = np.eye(5)
    M[:4, :] = coef.T
    return M, float(np.abs(X @ coef - z).max())


@dataclass
class HomogeneityResult:
    homogeneous: bool
    equivariant: bool
    residuals: np.ndarray         # fit + membership residual per sample
    q_shift: np.ndarray           # max |q' - q| per sample
    q_prime: np.ndarray
    failures: list


def homogeneity_check(phi, G, qs, points=None, tol=1e-8, rng=None):
    """Test xi o phi = phi o eta with xi = element(q) and eta in G.

    For each q we compute eta(x_i) = phi^{-1}(xi(phi(x_i))) at five generic
    points, fit an affine map, read q' from its translation and measure how
    far the fit is from element(q').  ``phi`` is the displacement field A of
    phi(x) = x + A(x).
    """
    if points is None:
        rng = np.random.default_rng(12345) if rng is None else rng
        points = rng.uniform(-1, 1, (5, 4))
    res, shift, qps, fails = [], [], [], []
    for i, q in enumerate(np.atleast_2d(qs)):
        xi = G.element(q)
        y = act(xi, points + phi(points))
        try:
            z = invert_map(phi, y, x0=act(xi, points))
        except ArithmeticError as exc:
            fails.append((i, str(exc)))
            res.append(np.inf)
            shift.append(np.inf)
            qps.append(np.full(4, np.nan))
            continue
        M, fit_res = fit_affine(points, z)
        qp = M[:4, 4]
        res.append(max(fit_res, membership_residual(G, M)))
        shift.append(float(np.abs(qp - q).max()))
        qps.append(qp)
    res, shift = np.array(res), np.array(shift)
    homogeneous = bool(np.all(res < tol)) and not fails
    return HomogeneityResult(homogeneous, homogeneous and bool(np.all(shift < tol)),
                             res, shift, np.array(qps), fails)


# ---------------------------------------------------------------- conjugation

@dataclass
class Conjugation:
    family: str                 # 'SG0+', 'SG0-', 'SGm', 'T' or 'distinct'
    m: float = 0.0
    rotation_sign: int = 1      # -1 when the rotation runs against the family's orientation
    residual: float = 0.0


def _massive_rate(M):
    """Rotation angle per unit x4-translation, from a single element."""
    theta = math.atan2(M[1, 0], M[0, 0])
    t4 = M[3, 4]
    return theta / (2 * t4) if abs(t4) > 1e-12 else None


def conjugate_group(xi, G, qs, tol=1e-9):
    """Classify {xi^-1 element(q) xi} against the screw families."""
    xi = np.asarray(xi, float)
    xinv = np.linalg.inv(xi)
    conj = [xinv @ G.element(q) @ xi for q in np.atleast_2d(qs)]

    def worst(H):
        return max(membership_residual(H, C) for C in conj)

    for kind in ("T", "SG0+", "SG0-"):
        r = worst(ScrewGroup(kind))
        if r < tol:
            return Conjugation(kind, residual=r)
    # massive family: fit the rotation rate from the element with the smallest x4-shift
    cands = [C for C in conj if abs(C[3, 4]) > 1e-6]
    if cands:
        C = min(cands, key=lambda C: abs(C[3, 4]))
        mu = _massive_rate(C)
        if mu:
            H = ScrewGroup("SGm", abs(mu))
            flipped = [np.diag([1, -1, 1, 1, 1]) @ C2 @ np.diag([1, -1, 1, 1, 1]) for C2 in conj]
            target = conj if mu > 0 else flipped
            r = max(membership_residual(H, C2) for C2 in target)
            if r < tol:
                return Conjugation("SGm", abs(mu), 1 if mu > 0 else -1, r)
    return Conjugation("distinct", residual=float("nan"))


PT = np.diag([-1.0, -1.0, -1.0, -1.0, 1.0])


# ---------------------------------------------------------------- Weitzenbock torsion

def connection_table(G):
    """Printed nonzero coefficients Gamma^a_{bc} (0-based indices as a dict of 1-based keys)."""
    if G.kind in ("SG0+", "SG0-"):
        s = 1 if G.kind == "SG0+" else -1
        return {(1, 3, 2): s, (2, 3, 1): -s, (1, 4, 2): s, (2, 4, 1): -s}
    if G.kind == "SGm":
        m = _exact(G.m)
        return {(1, 4, 2): 2 * m, (2, 4, 1): -2 * m}
    return {}


def _exact(m):
    return Fraction(m).limit_denominator(10 ** 12) if isinstance(m, float) else Fraction(m)


def connection_array(G, exact=True):
    zero = Fraction(0) if exact else 0.0
    Gam = np.full((4, 4, 4), zero, dtype=object if exact else float)
    for (a, b, c), v in connection_table(G).items():
        Gam[a - 1, b - 1, c - 1] = v if exact else float(v)
    return Gam


def derive_connection(G, P=None, h=1e-3):
    """Gamma^a_{bc} = -d Lambda(xi_{PQ})^a_c / dQ^b at Q = P, by a fourth-order difference."""
    P = np.array([0.3, -0.2, 0.5, 0.1]) if P is None else np.asarray(P, float)
    Gam = np.zeros((4, 4, 4))
    for b in range(4):
        e = np.zeros(4)
        e[b] = h
        Lam = {k: G.transport_element(P, P + k * e)[:4, :4] for k in (-2, -1, 1, 2)}
        dL = (-Lam[2] + 8 * Lam[1] - 8 * Lam[-1] + Lam[-2]) / (12 * h)
        Gam[:, b, :] = -dL
    return Gam


def transport_inner_product_error(G, rng, n=100):
    """Max |g(Gv, Gw) - g(v, w)| for the transport map over random P, Q, v, w."""
    g = MINKOWSKI.components
    worst = 0.0
    for _ in range(n):
        P, Q, v, w = rng.standard_normal((4, 4))
        Lam = G.transport_element(P, Q)[:4, :4]
        worst = max(worst, abs((Lam @ v) @ g @ (Lam @ w) - v @ g @ w))
    return worst


def _g_exact():
    G = np.full((4, 4), Fraction(0), dtype=object)
    for i, v in enumerate((1, 1, 1, -1)):
        G[i, i] = Fraction(v)
    return G


@dataclass
class Torsion:
    T: np.ndarray        # T^a_{bc}
    T_low: np.ndarray    # T_{abc}
    ax: np.ndarray       # lowered
    vec: np.ndarray      # lowered
    ten: np.ndarray      # lowered
    dual_axial: np.ndarray


def torsion_from_connection(Gam):
    """Torsion, its irreducible split and the Hodge dual of the axial part (Minkowski)."""
    Gm = _g_exact() if Gam.dtype == object else MINKOWSKI.components
    zero = Gam.flat[0] * 0
    T = np.empty((4, 4, 4), dtype=Gam.dtype)
    Tl = np.empty_like(T)
    for a in range(4):
        for b in range(4):
            for c in range(4):
                T[a, b, c] = Gam[a, b, c] - Gam[a, c, b]
    for a in range(4):
        for b in range(4):
            for c in range(4):
                Tl[a, b, c] = sum((Gm[a, d] * T[d, b, c] for d in range(4)), zero)
    trace = [sum((T[mu, mu, c] for mu in range(4)), zero) for c in range(4)]
    ax = np.empty_like(T)
    vec = np.empty_like(T)
    third = Fraction(1, 3) if Gam.dtype == object else 1 / 3
    for a in range(4):
        for b in range(4):
            for c in range(4):
                ax[a, b, c] = third * (Tl[a, b, c] + Tl[b, c, a] + Tl[c, a, b])
                vec[a, b, c] = third * (Gm[a, b] * trace[c] - Gm[a, c] * trace[b])
    ten = Tl - ax - vec
    # (*ax)_d = (1/3!) ax^{abc} eps_{abcd}; raising with diagonal +-1 entries
    diag = [Gm[i, i] for i in range(4)]
    dual = np.empty(4, dtype=Gam.dtype)
    for d in range(4):
        acc = zero
        for a in range(4):
            for b in range(4):
                for c in range(4):
                    e = int(EPS4[a, b, c, d])
                    if e:
                        acc = acc + e * diag[a] * diag[b] * diag[c] * ax[a, b, c]
        dual[d] = acc / 6
    return Torsion(T, Tl, ax, vec, ten, dual)


def weitzenbock_torsion(G, exact=True):
    return torsion_from_connection(connection_array(G, exact))


def light_cone_side(covector, tol=1e-12):
    """+1 / -1 for future / past pointing (sign of the x4 component), 0 if spacelike or zero."""
    w = np.asarray(covector, float)
    norm = MINKOWSKI.codot(w, w)
    if abs(w[3]) <= tol or norm > tol * max(1.0, np.dot(w, w)):
        return 0
    return int(np.sign(w[3]))
