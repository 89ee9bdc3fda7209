"""Volume-preserving elasticity on Minkowski space: plane waves, spinors and screw groups."""

from .errors import *  # noqa: F401,F403
from .fields import TrigField, TrigScalar, ZeroField
from .grid import Grid4, SampledField
from .kinematics import deformation_gradient, invariants, polar_decompose, strain
from .lagrangian import HarmonicMapLagrangian, QuadraticLagrangian, find_critical_c
from .report import Check, Report
from .solutions import canonical_massive, canonical_massless, make_massive, make_massless
from .tensor_core import MINKOWSKI, Metric4

__version__ = "0.1.0"
