"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: DomainError -> 2, PrecisionError and
ResourceError -> 3.
"""


class RankDualError(Exception):
    """Base class for all errors raised by the package."""


class DomainError(RankDualError, ValueError):
    """Input outside the mathematical domain of an operation."""


class PrecisionError(RankDualError, ArithmeticError):
    """A floating evaluation could not be rounded or certified."""


class ResourceError(RankDualError):
    """A computation exceeded a configured size bound."""


class SmallRankWarning(UserWarning):
    """Emitted when r or s is below 3, outside the range the duality assumes."""
