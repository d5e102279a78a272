"""Exception types raised by the package."""


class ParityError(Exception):
    """Base class for all errors raised here."""


class ConstantTermZero(ParityError, ZeroDivisionError):
    """Raised when inverting a series whose constant coefficient is 0."""


class DegreeOutOfRange(ParityError, IndexError):
    pass


class InvalidParams(ParityError, ValueError):
    """Raised when (a, t) violate the parity/congruence hypotheses."""


class InsufficientDegree(ParityError, ValueError):
    pass


class BaseCase(ParityError):
    """Raised when a reduction step is requested for a base node."""


class IdentityUnverified(ParityError):
    pass
