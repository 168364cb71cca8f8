"""Exception types raised by cavageo."""


class CavageoError(Exception):
    """Base class for all library errors."""


class AdmissibilityError(CavageoError, ValueError):
    """Surface parameters violate a regularity or causality condition.

    ``worst_v`` holds the meridian angle where the violated quantity is
    smallest (``None`` when the failure is not v-dependent).
    """

    def __init__(self, message, worst_v=None, margin=None):
        super().__init__(message)
        self.worst_v = worst_v
        self.margin = margin


class ChartDomainError(CavageoError, ValueError):
    """A Fermi-coordinate point lies outside the accepted chart radius."""


class InvalidSpecError(CavageoError, ValueError):
    """Initial-data specification not usable with the given parameters."""


class IntegrationStall(CavageoError, RuntimeError):
    """Step size underflowed during integration.

    The partially integrated solution is attached as ``partial``.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
