"""Exception hierarchy.  Every engine failure derives from :class:`RepstabError`."""


class RepstabError(Exception):
    """Base class for computation errors (CLI exit status 1)."""


class LabelRangeError(RepstabError, ValueError):
    """A label has more rows than the rank allows."""


class NonInvariant(RepstabError):
    """A character is not invariant under the relevant Weyl group."""


class InexactDivision(RepstabError, ArithmeticError):
    """The Weyl denominator did not divide the alternant exactly."""


class FractionalCoefficient(RepstabError, ArithmeticError):
    """A free Lie character came out with a non-integral coefficient."""


class CoefficientOverflow(RepstabError, OverflowError):
    """An integer coefficient or exponent left the 64-bit range."""


class RankCapExceeded(RepstabError):
    """No stabilisation was observed below the configured rank cap."""


class WindowTooSmall(RepstabError, ValueError):
    """Stability detection needs at least three consecutive ranks."""
