"""Verification suites behind the ``lorelast`` command.

Each suite takes a validated configuration dict, runs its checks with
pseudo-randomness derived from ``seed`` only, and returns a Report.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from . import groups as grp
from .errors import ConfigError, NoCriticalPoint, PolarUndefined
from .field_equations import (constraint_variation_check, directional_variation, euler_lagrange,
                              pressure_term, weak_form_check)
from .fields import TrigField, TrigScalar, ZeroField, random_trig_field
from .grid import Grid4, band_limited_field, sample
from .kinematics import (deformation_gradient, invariants, invariants_from_power_sums,
                         linearization_report, polar_decompose, strain)
from .lagrangian import (HarmonicMapLagrangian, QuadraticLagrangian, check_condition1,
                         find_critical_c)
from .linearization import (LinearizedContext, adjointness_error, d1, delta1, delta2,
                            lorenz_gauge_wave, maxwell_residual, quadratic_lagrangian_identity,
                            self_adjointness_error, symbol_determinant_error)
from .report import Report
from .solutions import (canonical_frame_massive, canonical_massive, canonical_massless,
                        classify_handedness, massive_b, massive_displacement,
                        massive_rotation_prefactor, massless_displacement, random_massive,
                        random_massless, rotation_form)
from .spinors import (SpinorWave, dirac_residual_massive, dirac_residual_massless,
                      form_from_dotted, form_from_undotted, massive_bispinor, massless_spinor,
                      spinor_from_minus, spinor_from_plus, square_dotted, square_undotted)
from .tensor_core import TOL_EIGEN, TOL_EXACT, TOL_FD, det4, eigenvalues

# ---------------------------------------------------------------- helpers


def thread_count():
    env = os.environ.get("LORELAST_THREADS")
    cap = os.cpu_count() or 1
    if env:
        try:
            cap = max(1, min(cap, int(env)))
        except ValueError:
            raise ConfigError(f"LORELAST_THREADS must be an integer, got {env!r}")
    return cap


def ordered_map(fn, items):
    """Map in a thread pool of at most LORELAST_THREADS workers, results in input order."""
    items = list(items)
    n = min(thread_count(), max(len(items), 1))
    if n == 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def spawn(seed, n):
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(n)]


def _slopes_check(rep, name, slopes, target, tol):
    slopes = np.asarray(slopes, float)
    rep.add(f"{name}_min", float(slopes.min()), target, tol)
    rep.add(f"{name}_max", float(slopes.max()), target, tol)


def _negative_control_field(amplitude=0.3):
    """A = (amplitude sin x3, 0, 0, 0): volume preserving but not critical."""
    return TrigField([[-1j * amplitude, 0, 0, 0]], [[0, 0, 1, 0]])


def negative_control_slopes(grid, L, deltas):
    """Variation slopes at the generic background, one per perturbation.

    Each perturbation is shifted by the background's own mode: a band-limited
    draw alone can have an accidentally tiny overlap with E and then shows a
    mixed slope.
    """
    A = _negative_control_field()
    base = sample(grid, lambda x: 0.5 * np.sin(x[..., 2])[..., None] * np.eye(4)[0])
    return ordered_map(lambda d: directional_variation(A, d + base, L, grid).slope, deltas)


def _random_lagrangians(rng, n):
    out = []
    while len(out) < n:
        al, be = rng.normal(size=2)
        if abs(be) > 0.1:
            out.append(QuadraticLagrangian(float(al), float(be)))
    return out


def _eig_match(found, expected):
    """Worst distance after sorting both spectra by (real, imag)."""
    f = sorted(np.asarray(found, complex), key=lambda z: (round(z.real, 6), z.imag))
    e = sorted(np.asarray(expected, complex), key=lambda z: (round(z.real, 6), z.imag))
    return float(max(abs(a - b) for a, b in zip(f, e)))


def _prefactor_from_polar(D, dA):
    F = polar_decompose(D).F
    k = float(np.sum(F * dA) / np.sum(dA * dA))
    return k, float(np.abs(F - k * dA).max())


def _dA(A, x):
    from .tensor_core import MINKOWSKI
    Jl = MINKOWSKI.components @ A.jacobian(x)
    return np.swapaxes(Jl, -1, -2) - Jl


# ---------------------------------------------------------------- massless

MASSLESS_DEFAULTS = dict(a=1.0, handedness="left", n_data=20, n_points=10000, n_lagrangians=5,
                         max_rapidity=0.5, grid_n=16, n_perturb=10, seed=0,
                         tol_exact=TOL_EXACT, tol_fd=TOL_FD)


def verify_massless(cfg):
    if cfg["handedness"] not in ("left", "right"):
        raise ConfigError("handedness must be 'left' or 'right'")
    if cfg["a"] <= 0:
        raise ConfigError("amplitude a must be positive")
    a = cfg["a"]
    sign = +1 if cfg["handedness"] == "left" else -1
    rep = Report("verify-massless", dict(cfg))
    rngs = spawn(cfg["seed"], cfg["n_data"] + 2)

    def one(rng):
        P = random_massless(rng, a, sign, cfg["max_rapidity"])
        x = rng.uniform(-10, 10, (cfg["n_points"], 4))
        A = massless_displacement(P)
        D = deformation_gradient(A, x)
        S = strain(D)
        e = invariants(S)
        S2 = S @ S
        Es = [np.abs(euler_lagrange(A, L, x)).max() for L in _random_lagrangians(rng, cfg["n_lagrangians"])]
        px = x[:20]
        Fp = np.array([polar_decompose(Di).F for Di in D[:20]])
        return dict(det=np.abs(det4(D) - 1).max(), inv=max(np.abs(q).max() for q in e),
                    S3=np.abs(S2 @ S).max(), S2=np.abs(S2).max(), E=max(Es),
                    hand=classify_handedness(P) == cfg["handedness"],
                    polar=np.abs(Fp - rotation_form(A, px, -0.5)).max())

    res = ordered_map(one, rngs[:cfg["n_data"]])
    rep.add("det_D_minus_1", max(r["det"] for r in res), 0.0, 1e-12)
    rep.add("invariants_sup", max(r["inv"] for r in res), 0.0, 1e-11)
    rep.add("S3_sup", max(r["S3"] for r in res), 0.0, 1e-11)
    rep.add("S2_sup_min", min(r["S2"] for r in res), 0.1 * a * a, relation="ge")
    rep.add("E_sup", max(r["E"] for r in res), 0.0, 1e-9)
    rep.add("handedness_classified", float(all(r["hand"] for r in res)), 1.0, relation="eq")
    rep.add("polar_F_vs_closed_form", max(r["polar"] for r in res), 0.0, 1e-10)

    Pc = canonical_massless(a, sign)
    Ac = massless_displacement(Pc)
    G = grp.SG0_PLUS if sign > 0 else grp.SG0_MINUS
    qs = rngs[-1].uniform(-1, 1, (64, 4))
    h = grp.homogeneity_check(Ac, G, qs)
    rep.add("equivariance_fit_residual", float(h.residuals.max()), 0.0, 1e-8)
    rep.add("equivariance_q_shift", float(h.q_shift.max()), 0.0, 1e-8)

    w = massless_spinor(Pc)
    xs = rngs[-1].uniform(-5, 5, (200, 4))
    rep.add("dirac_residual", dirac_residual_massless(w, xs), 0.0, 1e-12)

    grid = Grid4.cube(cfg["grid_n"])
    L = QuadraticLagrangian(0.5, -1.0)
    rng = rngs[-2]
    deltas = [band_limited_field(grid, rng, (4,), 1, 0.5) for _ in range(cfg["n_perturb"])]
    slopes = ordered_map(lambda d: directional_variation(Ac, d, L, grid).slope, deltas)
    _slopes_check(rep, "variation_slope", slopes, 2.0, 0.1)
    ctrl = negative_control_slopes(grid, L, deltas)
    _slopes_check(rep, "negative_control_slope", ctrl, 1.0, 0.1)
    rep.data = {"sign": sign, "group": G.kind, "variation_slopes": slopes, "control_slopes": ctrl}
    return rep


# ---------------------------------------------------------------- massive

MASSIVE_DEFAULTS = dict(m=1.0, alpha=0.5, beta=-1.0, b=0.0, n_data=20, n_points=10000,
                        max_rapidity=0.5, grid_n=16, n_perturb=10, seed=0)


def _massive_setup(cfg):
    L = QuadraticLagrangian(cfg["alpha"], cfg["beta"])
    if cfg["m"] <= 0:
        raise ConfigError("m must be positive")
    try:
        c = find_critical_c(L).c
    except NoCriticalPoint as exc:
        raise ConfigError(f"no massive solution: {exc}")
    a2 = c / (4 * cfg["m"] ** 2) - cfg["b"] ** 2
    if a2 <= 0:
        raise ConfigError(f"|b| = {abs(cfg['b'])} too large: a^2 = {a2:.6g} <= 0")
    return L, c, math.sqrt(a2)


def verify_massive(cfg):
    L, c, a = _massive_setup(cfg)
    m, b = cfg["m"], cfg["b"]
    rep = Report("verify-massive", dict(cfg))
    rep.data = {"c": c, "a": a}
    rep.add("critical_c", c, -cfg["beta"] / (2 * cfg["alpha"]), 1e-12 * max(1.0, c))
    rngs = spawn(cfg["seed"], cfg["n_data"] + 2)
    target = np.array([-c, c, 0.0, 0.0])

    def one(rng):
        P = random_massive(rng, m, c, b, cfg["max_rapidity"])
        x = rng.uniform(-10, 10, (cfg["n_points"], 4))
        A = massive_displacement(P)
        D = deformation_gradient(A, x)
        e = np.stack(invariants(strain(D)), axis=-1)
        return dict(inv=np.abs(e - target).max(), det=np.abs(det4(D) - 1).max(),
                    E=np.abs(euler_lagrange(A, L, x)).max(),
                    b=abs(massive_b(P.m, P.p, P.u, P.v) - b),
                    b_frame=abs(canonical_frame_massive(P)[2] - b))

    res = ordered_map(one, rngs[:cfg["n_data"]])
    rep.add("invariants_vs_(-c,c,0,0)", max(r["inv"] for r in res), 0.0, 1e-10)
    rep.add("det_D_minus_1", max(r["det"] for r in res), 0.0, 1e-12)
    rep.add("E_sup", max(r["E"] for r in res), 0.0, 1e-9)
    rep.add("b_from_wedge_formula", max(r["b"] for r in res), 0.0, 1e-10)
    rep.add("b_from_canonical_frame", max(r["b_frame"] for r in res), 0.0, 1e-10)

    Pc = canonical_massive(m, c, b)
    Ac = massive_displacement(Pc)
    x = rngs[-1].uniform(-10, 10, (200, 4))
    D = deformation_gradient(Ac, x)
    S = strain(D)
    disc = np.sqrt(complex(c * (c - 4)))
    expected = [0, 0, -c / 2 + disc / 2, -c / 2 - disc / 2]
    rep.add("strain_eigenvalues", max(_eig_match(eigenvalues(Si), expected) for Si in S), 0.0, TOL_EIGEN)
    if c < 4:
        pref = massive_rotation_prefactor(c)
        got = [_prefactor_from_polar(Di, dAi) for Di, dAi in zip(D[:20], _dA(Ac, x[:20]))]
        rep.add("rotation_prefactor", max(abs(k - pref) for k, _ in got), 0.0, 1e-12)
    else:
        try:
            polar_decompose(D[0])
            raised = 0.0
        except PolarUndefined:
            raised = 1.0
        rep.add("polar_undefined_for_c>=4", raised, 1.0, relation="eq")
    # the borderline case is checked whatever c the Lagrangian gives
    A4 = massive_displacement(canonical_massive(m, 4.0, 0.0))
    try:
        polar_decompose(deformation_gradient(A4, x[:1])[0])
        raised = 0.0
    except PolarUndefined:
        raised = 1.0
    rep.add("polar_undefined_at_c=4", raised, 1.0, relation="eq")

    qs = rngs[-1].uniform(-1, 1, (64, 4))
    h = grp.homogeneity_check(Ac, grp.ScrewGroup("SGm", m), qs)
    rep.add("homogeneity_fit_residual", float(h.residuals.max()), 0.0, 1e-8)
    rep.add("equivariant_iff_b=0", float(h.equivariant == (b == 0)), 1.0, relation="eq")

    grid = Grid4((cfg["grid_n"],) * 4, (2 * np.pi, 2 * np.pi, 2 * np.pi, np.pi / m))
    rng = rngs[-2]
    deltas = [band_limited_field(grid, rng, (4,), 1, 0.5) for _ in range(cfg["n_perturb"])]
    slopes = ordered_map(lambda d: directional_variation(Ac, d, L, grid).slope, deltas)
    _slopes_check(rep, "variation_slope", slopes, 2.0, 0.1)
    rep.data["variation_slopes"] = slopes
    return rep


# ---------------------------------------------------------------- linearized

LINEARIZED_DEFAULTS = dict(grid_n=16, n_symbol=100000, near_cone_fraction=0.5, n_pairs=5,
                           n_fields=10, seed=0)


def verify_linearized(cfg):
    rep = Report("verify-linearized", dict(cfg))
    rng_sym, rng_adj, rng_f, rng_lem = spawn(cfg["seed"], 4)
    n = cfg["n_symbol"]
    xi = rng_sym.standard_normal((n, 4))
    k = int(cfg["near_cone_fraction"] * n)
    xi[:k, 3] = np.linalg.norm(xi[:k, :3], axis=1) * (1 + rng_sym.uniform(-1e-6, 1e-6, k))
    rep.add("symbol_det_relative", float(symbol_determinant_error(xi).max()), 0.0, 1e-12)

    grid = Grid4.cube(cfg["grid_n"])
    for method in ("spectral", "fd4"):
        ctx = LinearizedContext(grid, method)
        rep.add(f"self_adjoint_{method}", self_adjointness_error(ctx, rng_adj, cfg["n_pairs"]), 0.0, 1e-10)
        rep.add(f"d_delta_adjoint_{method}", adjointness_error(ctx, rng_adj, cfg["n_pairs"]), 0.0, 1e-11)
    ctx = LinearizedContext(grid, "spectral")
    wave = lorenz_gauge_wave(grid)
    r_max, r_gauge = maxwell_residual(ctx, wave)
    rep.add("maxwell_residual", r_max, 0.0, 1e-8)
    rep.add("lorenz_gauge_residual", r_gauge, 0.0, 1e-8)

    Ac = massless_displacement(canonical_massless(1.0))
    Af = sample(grid, lambda x: Ac(x) @ np.diag([1.0, 1, 1, -1]))
    rep.add("linearized_massless_maxwell", delta2(ctx, d1(ctx, Af)).sup_norm(), 0.0, 1e-10)
    rep.add("linearized_massless_gauge", delta1(ctx, Af).sup_norm(), 0.0, 1e-10)

    worst = 0.0
    for _ in range(cfg["n_fields"]):
        A = random_trig_field(rng_f, 4, 0.5, 2)
        x = rng_f.uniform(-3, 3, (1000, 4))
        worst = max(worst, float(np.abs(quadratic_lagrangian_identity(A, x)).max()))
    rep.add("quadratic_lagrangian_identity", worst, 0.0, 1e-10)

    slopes = {key: [] for key in ("D", "U", "F", "V", "S", "det")}
    for _ in range(cfg["n_fields"]):
        out, _ = linearization_report(rng_lem.standard_normal((4, 4)))
        for key, v in out.items():
            slopes[key].append(v)
    for key, vals in slopes.items():
        vals = np.asarray(vals)
        if np.all(np.isinf(vals)):
            rep.add(f"linearization_{key}_exact", 1.0, 1.0, relation="eq")
        else:
            _slopes_check(rep, f"linearization_{key}_slope", vals, 2.0, 0.2)
    rep.data = {"linearization_slopes": {k: [float(v) for v in vs] for k, vs in slopes.items()}}
    return rep


# ---------------------------------------------------------------- Dirac

DIRAC_DEFAULTS = dict(a=1.0, m=1.0, c=1.0, n_forms=1000, n_frames=10, max_rapidity=0.5, seed=0)


def _round_trip(rng, dotted):
    xi = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    if dotted:
        F = form_from_dotted(square_dotted(xi))
        got = spinor_from_plus(F)
        F2 = form_from_dotted(square_dotted(got))
    else:
        F = form_from_undotted(square_undotted(xi))
        got = spinor_from_minus(F)
        F2 = form_from_undotted(square_undotted(got))
    spin = min(np.abs(got - xi).max(), np.abs(got + xi).max()) / np.abs(xi).max()
    return max(spin, np.abs(F2 - F).max() / np.abs(F).max())


def verify_dirac(cfg):
    if not 0 < cfg["c"] < 4:
        raise ConfigError("c must lie in (0, 4) for the massive rotation form")
    if cfg["a"] <= 0 or cfg["m"] <= 0:
        raise ConfigError("a and m must be positive")
    rep = Report("verify-dirac", dict(cfg))
    rng_rt, rng_fr, rng_x = spawn(cfg["seed"], 3)
    rep.add("round_trip_undotted", max(_round_trip(rng_rt, False) for _ in range(cfg["n_forms"])), 0.0, 1e-10)
    rep.add("round_trip_dotted", max(_round_trip(rng_rt, True) for _ in range(cfg["n_forms"])), 0.0, 1e-10)
    x = rng_x.uniform(-10, 10, (500, 4))
    for hand, sign in (("left", 1), ("right", -1)):
        worst = dirac_residual_massless(massless_spinor(canonical_massless(cfg["a"], sign)), x)
        for _ in range(cfg["n_frames"]):
            P = random_massless(rng_fr, cfg["a"], sign, cfg["max_rapidity"])
            worst = max(worst, dirac_residual_massless(massless_spinor(P), x))
        rep.add(f"massless_dirac_{hand}", worst, 0.0, 1e-12)
    w = massless_spinor(canonical_massless(cfg["a"], 1))
    wrong = SpinorWave(w.chi, w.k * np.array([1, 1, 1, -1]), w.kind)
    rep.add("negative_control_wrong_direction", dirac_residual_massless(wrong, x),
            0.5 * float(np.linalg.norm(w.chi)), relation="ge")

    m, c = cfg["m"], cfg["c"]
    xi, eta = massive_bispinor(canonical_massive(m, c))
    worst = max(dirac_residual_massive(xi, eta, m, x))
    for _ in range(cfg["n_frames"]):
        xg, eg = massive_bispinor(random_massive(rng_fr, m, c, 0.0, cfg["max_rapidity"]))
        worst = max(worst, *dirac_residual_massive(xg, eg, m, x))
    rep.add("massive_dirac_pair", worst, 0.0, 1e-12)
    a = math.sqrt(c) / (2 * m)
    amp = math.sqrt(-m * a * massive_rotation_prefactor(c))
    rep.add("massive_spinor_amplitude", float(np.abs(xi.chi - np.array([0, 1j * amp])).max()), 0.0, 1e-12)

    for cc in (0.1, 1.0, 3.9):
        A = massive_displacement(canonical_massive(m, cc))
        xs = x[:10]
        D = deformation_gradient(A, xs)
        got = [_prefactor_from_polar(Di, dAi)[0] for Di, dAi in zip(D, _dA(A, xs))]
        rep.add(f"rotation_prefactor_c={cc:g}", max(abs(k - massive_rotation_prefactor(cc)) for k in got),
                0.0, 1e-12)
    rep.data = {"massive_xi": [str(z) for z in xi.chi], "massive_eta": [str(z) for z in eta.chi]}
    return rep


# ---------------------------------------------------------------- groups

GROUPS_DEFAULTS = dict(group="SG0+", m=1.0, b=0.2, n_samples=64, n_pairs=1000, seed=0)

GROUP_NAMES = {"SG0+": "SG0+", "right0": "SG0+", "SG0-": "SG0-", "left0": "SG0-",
               "massive": "SGm", "SGm": "SGm", "translations": "T", "T": "T"}


def expected_dual_axial(G):
    if G.kind == "SG0+":
        return [Fraction(0), Fraction(0), Fraction(-2, 3), Fraction(-2, 3)]
    if G.kind == "SG0-":
        return [Fraction(0), Fraction(0), Fraction(2, 3), Fraction(2, 3)]
    if G.kind == "SGm":
        return [Fraction(0), Fraction(0), Fraction(-4, 3) * grp._exact(G.m), Fraction(0)]
    return [Fraction(0)] * 4


def verify_groups(cfg):
    if cfg["group"] not in GROUP_NAMES:
        raise ConfigError(f"unknown group {cfg['group']!r}; choose from {sorted(GROUP_NAMES)}")
    kind = GROUP_NAMES[cfg["group"]]
    if kind == "SGm" and cfg["m"] <= 0:
        raise ConfigError("m must be positive")
    G = grp.ScrewGroup(kind, cfg["m"] if kind == "SGm" else 0.0)
    rep = Report("verify-groups", dict(cfg))
    rng_q, rng_p, rng_t = spawn(cfg["seed"], 3)

    tor = grp.weitzenbock_torsion(G, exact=True)
    exp = expected_dual_axial(G)
    diff = max(abs(Fraction(d) - e) for d, e in zip(tor.dual_axial, exp))
    rep.add("dual_axial_exact", float(diff), 0.0, relation="eq")
    rep.add("vector_torsion_zero", float(max(abs(v) for v in tor.vec.ravel())), 0.0, relation="eq")
    recon = tor.ax + tor.vec + tor.ten - tor.T_low
    rep.add("decomposition_reconstructs", float(max(abs(v) for v in recon.ravel())), 0.0, relation="eq")
    anti = max(abs(tor.ax[a, b, c] + tor.ax[b, a, c]) for a in range(4) for b in range(4) for c in range(4))
    rep.add("axial_totally_antisymmetric", float(anti), 0.0, relation="eq")
    rep.add("derived_connection_vs_table",
            float(np.abs(grp.derive_connection(G) - grp.connection_array(G, exact=False)).max()), 0.0, 1e-9)

    pairs = rng_p.uniform(-2, 2, (cfg["n_pairs"], 2, 4))
    rep.add("closure", max(grp.closure_residual(G, q1, q2) for q1, q2 in pairs), 0.0, 1e-10)
    rep.add("inverse_in_group",
            max(grp.membership_residual(G, np.linalg.inv(G.element(q))) for q, _ in pairs), 0.0, 1e-10)
    rep.add("restricted_poincare", float(all(grp.is_restricted(G.element(q)) for q, _ in pairs[:100])),
            1.0, relation="eq")
    rep.add("transport_metric_compatible", grp.transport_inner_product_error(G, rng_t, 200), 0.0, 1e-10)
    trans = 0.0
    for P, Q in rng_t.uniform(-3, 3, (200, 2, 4)):
        trans = max(trans, float(np.abs(grp.act(G.transport_element(P, Q), P) - Q).max()))
    rep.add("transitivity", trans, 0.0, 1e-12)

    qs = rng_q.uniform(-1, 1, (cfg["n_samples"], 4))
    if kind in ("SG0+", "SG0-"):
        sign = 1 if kind == "SG0+" else -1
        h = grp.homogeneity_check(massless_displacement(canonical_massless(1.0, sign)), G, qs)
        rep.add("massless_equivariant_fit", float(h.residuals.max()), 0.0, 1e-8)
        rep.add("massless_equivariant", float(h.equivariant), 1.0, relation="eq")
        other = grp.weitzenbock_torsion(grp.ScrewGroup("SG0-" if sign > 0 else "SG0+"))
        sides = (grp.light_cone_side(np.array(tor.dual_axial, float)),
                 grp.light_cone_side(np.array(other.dual_axial, float)))
        rep.add("opposite_light_cone_sides", float(sides[0] * sides[1]), -1.0, relation="eq")
        C = grp.conjugate_group(np.eye(5), G, qs)
        rep.add("identity_conjugation_same_group", float(C.family == kind), 1.0, relation="eq")
    elif kind == "SGm":
        m = G.m
        for b, want in ((0.0, True), (cfg["b"], cfg["b"] == 0)):
            c = 4 * m * m * (0.2 ** 2 + b * b)
            h = grp.homogeneity_check(massive_displacement(canonical_massive(m, c, b)), G, qs)
            rep.add(f"massive_b={b:g}_homogeneity_fit", float(h.residuals.max()), 0.0, 1e-8)
            rep.add(f"massive_b={b:g}_equivariant", float(h.equivariant), float(want), relation="eq")
            if b != 0:
                shift = np.abs(h.q_prime[:, 2] - (qs[:, 2] - 2 * m * b * qs[:, 3])).max()
                rep.add("massive_eta_shift_q3-2mbq4", float(shift), 0.0, 1e-8)
        C = grp.conjugate_group(grp.PT, G, qs)
        rep.add("PT_conjugate_same_family", float(C.family == "SGm" and abs(C.m - m) < 1e-9), 1.0,
                relation="eq")
        rep.add("PT_conjugate_rotation_sign", float(C.rotation_sign), -1.0, relation="eq")
    rep.data = {"group": kind, "dual_axial": [str(Fraction(v)) for v in tor.dual_axial],
                "connection": {f"{a}{b}{c}": str(v) for (a, b, c), v in grp.connection_table(G).items()}}
    return rep


# ---------------------------------------------------------------- field equations

APPENDIXD_DEFAULTS = dict(alpha=0.5, beta=-1.0, grid_n=16, n_fields=3, amplitude=0.05,
                          n_strains=10000, seed=0)


def verify_appendix_d(cfg):
    rep = Report("verify-appendixD", dict(cfg))
    if cfg["beta"] == 0:
        raise ConfigError("beta must be nonzero")
    rng_f, rng_s, rng_c = spawn(cfg["seed"], 3)
    grid = Grid4.cube(cfg["grid_n"])
    Ls = {"quadratic": QuadraticLagrangian(cfg["alpha"], cfg["beta"]), "harmonic": HarmonicMapLagrangian()}
    fields = []
    for _ in range(cfg["n_fields"]):
        A = random_trig_field(rng_f, 3, cfg["amplitude"], 1, grid.periods)
        # distinct torus modes are L2-orthogonal, so Delta reuses the modes of A
        U = 2 * cfg["amplitude"] * (rng_f.standard_normal(A.U.shape) + 1j * rng_f.standard_normal(A.U.shape))
        fields.append((A, TrigField(U, A.K)))
    for name, L in Ls.items():
        errs = ordered_map(lambda f: weak_form_check(f[0], f[1], L, grid)[2], fields)
        rep.add(f"E_vs_variational_oracle_{name}", max(errs), 0.0, 1e-4)
    x = rng_s.uniform(-5, 5, (1000, 4))
    rep.add("E_identity_map", float(np.abs(euler_lagrange(ZeroField(), Ls["quadratic"], x)).max()), 0.0, 1e-14)
    rep.add("E_massless", float(np.abs(euler_lagrange(massless_displacement(canonical_massless(1.0)),
                                                      Ls["quadratic"], x)).max()), 0.0, 1e-9)
    try:
        c = find_critical_c(Ls["quadratic"]).c
        A = massive_displacement(canonical_massive(1.0, c, 0.25 * math.sqrt(c)))
        rep.add("E_massive", float(np.abs(euler_lagrange(A, Ls["quadratic"], x)).max()), 0.0, 1e-9)
    except NoCriticalPoint:
        pass

    S = strain(np.eye(4) + 0.3 * rng_s.standard_normal((cfg["n_strains"], 4, 4)))
    e_tr = np.stack(invariants(S), axis=-1)
    e_ps = np.stack(invariants_from_power_sums(S), axis=-1)
    e_eig = np.array([np.poly(np.linalg.eigvals(Si))[1:] * [-1, 1, -1, 1] for Si in S]).real
    rep.add("invariants_traces_vs_eigenvalues", float(np.abs(e_tr - e_eig).max()), 0.0, 1e-9)
    rep.add("invariants_traces_vs_power_sums", float(np.abs(e_tr - e_ps).max()), 0.0, 1e-9)

    Ac = massless_displacement(canonical_massless(1.0))
    D = deformation_gradient(Ac, x)
    th = x[:, 2] + x[:, 3]
    dp3 = pressure_term(D, np.broadcast_to([0, 0, 1.0, 0], x.shape))
    dp1 = pressure_term(D, np.broadcast_to([1.0, 0, 0, 0], x.shape))
    exp1 = np.stack([np.ones_like(th), 0 * th, np.sin(th), np.sin(th)], axis=-1)
    rep.add("pressure_p=x3", float(np.abs(dp3 - [0, 0, 1, 0]).max()), 0.0, 1e-12)
    rep.add("pressure_p=x1", float(np.abs(dp1 - exp1).max()), 0.0, 1e-12)
    ctrl = constraint_variation_check(Ac, random_trig_field(rng_c, 3, 0.3, 1, grid.periods),
                                      TrigScalar([0.7 + 0.2j], [[0, 1, 1, 0]]), grid)
    rep.add("constraint_variation_slope", ctrl.slope, 2.0, 0.1)
    const = constraint_variation_check(Ac, random_trig_field(rng_c, 3, 0.3, 1, grid.periods),
                                       TrigScalar(const=1.3), grid)
    rep.add("constraint_constant_p_first_order", abs(const.first_order), 0.0, 1e-12)
    rep.add("constraint_constant_p_direct", float(const.residuals.max()), 0.0, 1e-10)
    return rep


# ---------------------------------------------------------------- Lagrangian scan

SCAN_DEFAULTS = dict(family="quadratic", alpha=0.5, beta=-1.0, c_max=1000.0, step=0.01,
                     e2_max=10.0, n_table=101)


def lagrangian_scan(cfg):
    if cfg["family"] == "quadratic":
        if cfg["beta"] == 0:
            raise ConfigError("beta must be nonzero")
        L = QuadraticLagrangian(cfg["alpha"], cfg["beta"])
    elif cfg["family"] == "harmonic":
        L = HarmonicMapLagrangian()
    else:
        raise ConfigError("family must be 'quadratic' or 'harmonic'")
    if cfg["step"] <= 0 or cfg["c_max"] <= cfg["step"]:
        raise ConfigError("need 0 < step < c_max")
    rep = Report("lagrangian-scan", dict(cfg))
    c1 = check_condition1(L)
    rep.add("condition1_dL/de2(0)", c1.value, -1.0, TOL_EXACT)
    e2 = np.linspace(-cfg["e2_max"], cfg["e2_max"], cfg["n_table"])
    z = np.zeros_like(e2)
    table = {"e2": e2, "L": L.value(e2, z, z), "dL_de2": np.broadcast_to(L.gradient(e2, z, z)[0], e2.shape)}
    try:
        crit = find_critical_c(L, cfg["c_max"], cfg["step"])
        roots = list(crit.roots)
    except NoCriticalPoint:
        crit, roots = None, []
    expect_root = cfg["family"] == "quadratic" and cfg["alpha"] * cfg["beta"] < 0 and \
        -cfg["beta"] / (2 * cfg["alpha"]) <= cfg["c_max"]
    rep.add("critical_point_exists", float(bool(roots)), float(expect_root), relation="eq")
    if crit is not None and expect_root:
        cexp = -cfg["beta"] / (2 * cfg["alpha"])
        rep.add("critical_c", crit.c, cexp, 1e-12 * max(1.0, cexp))
    rep.data = {"condition1_rescale": c1.rescale, "critical_c": crit.c if crit else None,
                "roots": roots, "table": table}
    if cfg["family"] == "quadratic":
        try:
            lame = L.lame
            rep.data["lame"] = {"lambda": lame.lam, "mu": lame.mu, "nu": lame.nu}
        except Exception as exc:       # noqa: BLE001  (degenerate elastic constants)
            rep.data["lame"] = str(exc)
    return rep


SUITES = {
    "verify-massless": (verify_massless, MASSLESS_DEFAULTS,
                        "massless plane waves: volume preservation, nilpotent strain, field equation, "
                        "handedness, screw-group equivariance, criticality on a torus"),
    "verify-massive": (verify_massive, MASSIVE_DEFAULTS,
                       "massive plane waves: critical strain c, invariants and eigenvalues, field equation, "
                       "rotation prefactor, homogeneity, criticality on a torus"),
    "verify-linearized": (verify_linearized, LINEARIZED_DEFAULTS,
                          "linearized equations: principal symbol, self-adjointness, Maxwell in Lorenz gauge, "
                          "quadratic Lagrangian identity, first-order kinematics"),
    "verify-dirac": (verify_dirac, DIRAC_DEFAULTS,
                     "spinors: 2-form/spinor round trips, massless and massive Dirac equations, "
                     "rotation-form prefactor"),
    "verify-groups": (verify_groups, GROUPS_DEFAULTS,
                      "screw groups: Weitzenbock connection and torsion, group axioms, homogeneity, "
                      "conjugation"),
    "verify-appendixD": (verify_appendix_d, APPENDIXD_DEFAULTS,
                         "explicit field equations: variational oracle, invariant routes, pressure and "
                         "constraint terms"),
    "lagrangian-scan": (lagrangian_scan, SCAN_DEFAULTS,
                        "tabulate L(e2, 0, 0), check normalization and report the critical value c"),
}
