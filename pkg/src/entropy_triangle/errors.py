"""Exception hierarchy.

Every error carries an ``exit_code`` so the command line can map failures
to process status without a lookup table.
"""


class EntropyTriangleError(Exception):
    exit_code = 1


class ConfigError(EntropyTriangleError, ValueError):
    """Bad arguments, unknown names, malformed partitions."""

    exit_code = 2


class DataError(EntropyTriangleError, ValueError):
    """Input data that cannot be used as given (NaN, ragged rows, ...)."""

    exit_code = 3


class DomainError(DataError):
    """A code falls outside the declared cardinality of its variable."""


class EmptyInputError(DataError):
    pass


class DegenerateDomainError(DataError):
    """The uniform reference entropy is zero, so no simplex is defined."""


class ConsistencyError(EntropyTriangleError, ArithmeticError):
    """Two routes to the same quantity disagree beyond tolerance."""

    exit_code = 4
