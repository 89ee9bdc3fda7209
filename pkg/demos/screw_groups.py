"""Screw groups, their Weitzenbock torsion and which plane waves they leave homogeneous.

Run with ``python3 demos/screw_groups.py``.
"""

from fractions import Fraction

import numpy as np

from lorelast import groups as grp
from lorelast.solutions import canonical_massive, canonical_massless, massive_displacement, massless_displacement

for G in (grp.SG0_PLUS, grp.SG0_MINUS, grp.ScrewGroup("SGm", 2.0), grp.TRANSLATIONS):
    tor = grp.weitzenbock_torsion(G)
    dual = [str(Fraction(v)) for v in tor.dual_axial]
    side = {1: "future null", -1: "past null", 0: "spacelike or zero"}[grp.light_cone_side(np.array(tor.dual_axial, float))]
    print(f"{G.kind:5s} dual axial torsion {dual}  ({side})")

qs = np.random.default_rng(3).uniform(-1, 1, (32, 4))
for sign, G in ((+1, grp.SG0_PLUS), (-1, grp.SG0_MINUS)):
    h = grp.homogeneity_check(massless_displacement(canonical_massless(1.0, sign)), G, qs)
    print(f"massless sign {sign:+d} under {G.kind}: equivariant={h.equivariant}, "
          f"fit residual {h.residuals.max():.1e}")

G = grp.ScrewGroup("SGm", 1.0)
for b in (0.0, 0.2):
    h = grp.homogeneity_check(massive_displacement(canonical_massive(1.0, 0.2 + 4 * b * b, b)), G, qs)
    print(f"massive b={b}: homogeneous={h.homogeneous}, equivariant={h.equivariant}, "
          f"largest q shift {h.q_shift.max():.3f}")
