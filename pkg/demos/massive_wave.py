"""Massive plane waves for a quadratic Lagrangian, from critical c to the Dirac pair.

Run with ``python3 demos/massive_wave.py``.
"""

import numpy as np

from lorelast import QuadraticLagrangian, canonical_massive, find_critical_c, strain
from lorelast.errors import PolarUndefined
from lorelast.field_equations import euler_lagrange
from lorelast.kinematics import deformation_gradient, invariants, polar_decompose
from lorelast.solutions import massive_displacement, massive_rotation_prefactor
from lorelast.spinors import dirac_residual_massive, massive_bispinor
from lorelast.tensor_core import eigenvalues

L = QuadraticLagrangian(alpha=0.5, beta=-1.0)
c = find_critical_c(L).c
m, b = 1.0, 0.3
P = canonical_massive(m, c, b)
print(f"critical c = {c}, amplitude a = {P.a:.6f} (b = {b})")

rng = np.random.default_rng(2)
x = rng.uniform(-4, 4, (2000, 4))
A = massive_displacement(P)
D = deformation_gradient(A, x)
S = strain(D)
print("invariants at a point:", [round(float(e[0]), 12) for e in invariants(S)])
print("strain eigenvalues   :", np.round(eigenvalues(S[0]), 10))
print("field equation sup   :", np.abs(euler_lagrange(A, L, x)).max())

pol = polar_decompose(D[0])
print("stretch eigenvalues  :", np.round(pol.C_eigenvalues, 10))
print("rotation prefactor   :", massive_rotation_prefactor(c))

try:
    polar_decompose(deformation_gradient(massive_displacement(canonical_massive(m, 4.0)), x[:1])[0])
except PolarUndefined as exc:
    print("at c = 4 the stretch has no real logarithm:", exc)

xi, eta = massive_bispinor(P)
print("bispinor:", np.round(xi.chi, 6), np.round(eta.chi, 6))
print("Dirac residuals:", dirac_residual_massive(xi, eta, m, x))
