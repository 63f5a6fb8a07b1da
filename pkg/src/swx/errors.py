"""Exception hierarchy.

Every domain failure derives from :class:`SWXError`; the command line maps
these to exit code 2.
"""


class SWXError(Exception):
    """Base class for all domain errors raised by swx."""


class ValidationError(SWXError, ValueError):
    pass


class UnsupportedSignature(ValidationError):
    pass


class CupValidationError(ValidationError):
    pass


class ManifestError(ValidationError):
    pass


class NotCharacteristic(SWXError):
    pass


class IntegralityError(SWXError):
    pass


class InternalConsistencyError(SWXError):
    pass


class NotInPositiveCone(SWXError):
    pass


class PathLeavesCone(SWXError):
    pass


class OnWallError(SWXError):
    """Raised when an operation needs a c-good pair but got one on the wall."""


class NotApplicable(SWXError):
    pass
