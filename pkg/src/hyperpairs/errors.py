"""Exception hierarchy shared by every module."""


class HyperpairsError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(HyperpairsError, ValueError):
    """An argument lies outside the domain of the operation."""


class PoleError(DomainError):
    """A gamma function (or a lower series parameter) sits on a pole."""


class ParityError(DomainError):
    """Integer parameters have a parity for which the identity is void."""


class NotConverged(HyperpairsError, ArithmeticError):
    """A series hit its term budget before meeting the stopping rule."""


class ImaginaryPhase(HyperpairsError, ArithmeticError):
    """A power of i that should be real came out with an odd exponent."""
