"""Exception hierarchy.

Everything raised on bad input derives from :class:`PreconditionError`, so a
caller (the command line in particular) can treat the whole family alike.
"""


class LogStabError(Exception):
    """Base class for all errors raised by this package."""


class PreconditionError(LogStabError, ValueError):
    """An argument violates a documented precondition."""


class ParseError(PreconditionError):
    pass


class UnsortedA(PreconditionError):
    pass


class BadLength(PreconditionError):
    pass


class BadGcd(PreconditionError):
    pass


class UnknownRay(PreconditionError, KeyError):
    pass


class NotASubspace(PreconditionError):
    pass


class OverlappingAmbients(PreconditionError):
    pass


class EmptyC(PreconditionError):
    pass


class NonPositiveNu(PreconditionError):
    pass


class TooLarge(PreconditionError):
    pass


class ZeroPoly(PreconditionError):
    pass


class NotOneSignChange(PreconditionError):
    pass


class BadOrder(PreconditionError):
    pass


class NotACoveredCase(PreconditionError):
    pass


class NotCovered(PreconditionError):
    pass


class DisagreesWithDirect(LogStabError):
    """A displayed case polynomial is not a positive multiple of its direct form."""


class BoundViolated(LogStabError):
    """A threshold left the bracket it is proven to lie in."""


class MismatchFound(LogStabError):
    """The candidate criterion and the brute-force oracle disagree."""
