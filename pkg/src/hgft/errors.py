"""Exception types shared across the package."""


class HGFTError(Exception):
    """Base class for all package errors."""


class InvariantError(HGFTError, ValueError):
    """A value violates a documented invariant (e.g. ``|b_1| >= 1``)."""


class ParameterRangeError(HGFTError, ValueError):
    """Parameters outside the supported range, including integer overflow."""


class DecompositionInfeasible(HGFTError, ValueError):
    """The leading extreme-point weight would be negative."""


class PoleProximityError(HGFTError, ArithmeticError):
    """The transformed series is too close to zero to form a quotient."""

    def __init__(self, z, value):
        super().__init__(f"|F(z)| = {abs(value):.3e} below pole threshold at z = {z!r}")
        self.z = z
        self.value = value
