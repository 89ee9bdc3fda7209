"""Exception types raised by lorelast."""


class LorelastError(ValueError):
    """Base class for all domain errors."""


class NotADiffeomorphism(LorelastError):
    """det of the deformation gradient is not positive."""


class PolarUndefined(LorelastError):
    """The Lorentzian polar decomposition does not exist."""


class NotLightlike(LorelastError):
    pass


class MassShellViolated(LorelastError):
    """p.p differs from -4 m^2."""


class NotForward(LorelastError):
    """Wave covector is not future pointing (p_4 <= 0)."""


class NotIsotropic(LorelastError):
    pass


class NotOrthogonal(LorelastError):
    pass


class NoCriticalPoint(LorelastError):
    pass


class ConstraintViolated(LorelastError):
    pass


class NotDegenerate(LorelastError):
    """A 2-form expected to be degenerate has nonzero determinant."""


class NotPolarized(LorelastError):
    """A 2-form is neither self-dual nor anti-self-dual."""


class SignUnresolvable(LorelastError):
    pass


class DegreeMismatch(LorelastError):
    pass


class NotSelfAdjoint(LorelastError):
    pass


class ConfigError(LorelastError):
    """Invalid CLI configuration."""
