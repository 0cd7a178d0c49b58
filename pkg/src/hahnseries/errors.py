"""Exceptions shared across the library."""


class HahnSeriesError(Exception):
    """Base class for all library errors."""


class RankMismatchError(HahnSeriesError):
    """Exponents of different rank were combined."""


class NotInValuationRingError(HahnSeriesError):
    """A series lies outside the valuation ring required by the operation."""


class PrecisionError(HahnSeriesError):
    """Requested precision is unreachable, or input precision is insufficient."""


class PreconditionError(HahnSeriesError):
    """An operation precondition does not hold."""


class DependenceError(PreconditionError):
    """A family required to be valuation independent is dependent."""


class SkeletonMismatchError(PreconditionError):
    """Additive and multiplicative skeletons do not match."""


class ParseError(HahnSeriesError):
    """Syntax or semantic error in a textual expression, with position."""

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column
