"""Exception hierarchy shared by all modules."""


class SpinalError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatchError(SpinalError, ValueError):
    pass


class InvalidFunctionalError(SpinalError, ValueError):
    pass


class InsufficientPrefixError(SpinalError, IndexError):
    """A finite-prefix sequence does not contain the letters an operation needs."""


class UnsupportedModeError(SpinalError, TypeError):
    pass


class UndefinedIndexError(SpinalError, ValueError):
    """An index such as lambda_i(k) is not defined for the given arguments."""


class PreconditionError(SpinalError, ValueError):
    pass


class DepthError(SpinalError, ValueError):
    pass


class InconsistencyError(SpinalError, RuntimeError):
    """Internal invariant broken; indicates a bug rather than bad input."""


class NotATwoGroupError(SpinalError, ValueError):
    pass


class OracleCapError(SpinalError, ValueError):
    """The requested permutation degree exceeds the oracle cap."""
