"""Acceptance criteria, each at its stated tolerance.

Every criterion is assembled from the checks of the verification suites run
at their default sizes (10^4 points, 10^5 symbols, a 16^4 torus and so on).
A one-line verdict per criterion is printed in the terminal summary; the same
lines appear when the module is run as a script.
"""

import sys

import pytest

from lorelast.suites import SUITES

RESULTS = {}

CRITERIA = {
    1: ("massless solution", [
        ("verify-massless", {}, ["det_D_minus_1", "invariants_sup", "S3_sup", "S2_sup_min", "E_sup"])]),
    2: ("massive solution", [
        ("verify-massive", {}, ["critical_c", "invariants_vs_(-c,c,0,0)", "strain_eigenvalues", "E_sup",
                                "polar_undefined_at_c=4"])]),
    3: ("variational criticality", [
        ("verify-massless", {}, ["variation_slope_", "negative_control_slope_"]),
        ("verify-massive", {}, ["variation_slope_"])]),
    4: ("linearized operator", [
        ("verify-linearized", {}, ["symbol_det_relative", "self_adjoint_", "maxwell_residual",
                                   "lorenz_gauge_residual", "quadratic_lagrangian_identity"])]),
    5: ("linearization slopes", [
        ("verify-linearized", {}, ["linearization_"])]),
    6: ("spinors and Dirac", [
        ("verify-dirac", {}, ["round_trip_", "massless_dirac_", "massive_dirac_pair", "rotation_prefactor_"])]),
    7: ("screw groups and torsion", [
        ("verify-groups", {"group": "SG0+"}, ["dual_axial_exact", "vector_torsion_zero", "massless_equivariant",
                                              "derived_connection_vs_table"]),
        ("verify-groups", {"group": "SG0-"}, ["dual_axial_exact", "vector_torsion_zero", "massless_equivariant",
                                              "derived_connection_vs_table"]),
        ("verify-groups", {"group": "SGm", "m": 1.0}, ["dual_axial_exact", "vector_torsion_zero", "massive_b=",
                                                       "massive_eta_shift", "derived_connection_vs_table"]),
        ("verify-groups", {"group": "SGm", "m": 2.0}, ["dual_axial_exact", "vector_torsion_zero",
                                                       "derived_connection_vs_table"])]),
    8: ("oracle equivalence", [
        ("verify-appendixD", {}, ["invariants_traces_vs_eigenvalues", "E_vs_variational_oracle_"])]),
}

_cache = {}


def run_suite(name, overrides):
    key = (name, tuple(sorted(overrides.items())))
    if key not in _cache:
        fn, defaults, _ = SUITES[name]
        cfg = dict(defaults)
        cfg.setdefault("seed", 0)
        cfg.update(overrides)
        _cache[key] = fn(cfg)
    return _cache[key]


def evaluate(n):
    """(passed, selected checks) for criterion n."""
    selected = []
    for name, overrides, prefixes in CRITERIA[n][1]:
        rep = run_suite(name, overrides)
        for prefix in prefixes:
            hits = [c for c in rep.checks if c.name.startswith(prefix)]
            assert hits, f"{name} has no check named {prefix}*"
            selected.extend((name, c) for c in hits)
    return all(c.passed for _, c in selected), selected


def verdict(n, ok, selected):
    failing = [f"{s}:{c.name}={c.measured:.3g}" for s, c in selected if not c.passed]
    tail = f"  [{', '.join(failing)}]" if failing else ""
    return f"criterion {n} ({CRITERIA[n][0]}): {'PASS' if ok else 'FAIL'} ({len(selected)} checks){tail}"


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    ok, selected = evaluate(n)
    RESULTS[n] = verdict(n, ok, selected)
    print(RESULTS[n])
    assert ok, RESULTS[n]


if __name__ == "__main__":
    status = 0
    for n in sorted(CRITERIA):
        ok, selected = evaluate(n)
        print(verdict(n, ok, selected), flush=True)
        status |= not ok
    sys.exit(status)
