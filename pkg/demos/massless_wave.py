"""A circularly polarized massless wave: a walk through what makes it special.

Run with ``python3 demos/massless_wave.py``.
"""

import numpy as np

from lorelast import QuadraticLagrangian, canonical_massless, invariants, strain
from lorelast.field_equations import euler_lagrange
from lorelast.kinematics import deformation_gradient
from lorelast.solutions import classify_handedness, massless_displacement, rotation_form_massless
from lorelast.spinors import dirac_residual_massless, massless_spinor
from lorelast.tensor_core import det4

rng = np.random.default_rng(1)
x = rng.uniform(-5, 5, (2000, 4))

P = canonical_massless(a=1.0)
A = massless_displacement(P)
print("wave covector p =", P.p, " amplitude a =", P.a, " handedness:", classify_handedness(P))

D = deformation_gradient(A, x)
S = strain(D)
print("det D - 1        :", np.abs(det4(D) - 1).max())
print("invariants e1..e4:", [float(np.abs(e).max()) for e in invariants(S)])
print("sup |S^2|, |S^3| :", np.abs(S @ S).max(), np.abs(S @ S @ S).max())

# the strain is nilpotent, so every invariant vanishes and any Lagrangian
# of the invariants sees the wave as a critical point
for alpha, beta in [(0.5, -1.0), (1.0, 3.0), (-2.0, 0.25)]:
    E = euler_lagrange(A, QuadraticLagrangian(alpha, beta), x)
    print(f"field equation residual, alpha={alpha:+}, beta={beta:+}: {np.abs(E).max():.2e}")

F = rotation_form_massless(P, x[:3])
print("rotation 2-form at one point:\n", np.round(F[0], 6))

psi = massless_spinor(P)
print(f"spinor ({psi.kind}):", np.round(psi.chi, 6), " Weyl residual:", dirac_residual_massless(psi, x))
