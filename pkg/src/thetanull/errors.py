"""Exception hierarchy.

Every numerical failure raised by the library derives from
:class:`ThetaNullError`; the CLI maps these to exit status 3.
"""


class ThetaNullError(Exception):
    """Base class for all library errors."""


class NotSymmetric(ThetaNullError):
    pass


class ImagNotPositiveDefinite(ThetaNullError):
    pass


class NumericallySingular(ThetaNullError):
    pass


class NotSymplectic(ThetaNullError):
    pass


class EntryOverflow(ThetaNullError, OverflowError):
    pass


class RadiusCapExceeded(ThetaNullError):
    pass


class NoConvergence(ThetaNullError):
    pass


class LeftSiegelSpace(ThetaNullError):
    pass


class NotInGamma48(ThetaNullError):
    pass


class NotOnDivisor(ThetaNullError):
    pass


class SingularPointOfTheta(ThetaNullError):
    pass


class NotOnSingularityScheme(ThetaNullError):
    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals or {}


class InternalConsistencyError(ThetaNullError):
    """Two independent computation routes disagreed beyond tolerance."""


class NotOnDivisorWarning(UserWarning):
    """Emitted when a divisor-only quantity is requested off the divisor."""
