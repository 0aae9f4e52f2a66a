"""Exception hierarchy for horizonmatch.

Every error raised by this package derives from :class:`HorizonMatchError`,
so callers (and the CLI) can catch one base class.
"""


class HorizonMatchError(Exception):
    """Base class for all horizonmatch errors."""


class SeriesValidationError(HorizonMatchError, ValueError):
    """A raw series violates the Series invariants."""


class NonFiniteValueError(SeriesValidationError):
    """A series value is NaN or infinite."""

    def __init__(self, index: int):
        super().__init__(f"non-finite value at position {index}")
        self.index = index


class TooShortError(SeriesValidationError):
    """Fewer observations than the operation requires."""


class NonMonotoneLabelsError(SeriesValidationError):
    """Numeric time labels are not strictly increasing."""


class HorizonOutOfRangeError(HorizonMatchError, ValueError):
    """Requested forecast horizon is < 1."""


class SeriesTooShortError(HorizonMatchError, ValueError):
    """Series too short for the requested horizon count."""


class InsufficientHistoryError(HorizonMatchError, ValueError):
    """Forecast origin lies outside the usable sample."""


class NonFiniteObjectiveError(HorizonMatchError, RuntimeError):
    """Objective was non-finite at the start point and at every restart jitter."""


class OptimizerDivergedError(HorizonMatchError, RuntimeError):
    """No finite loss value was found at any optimizer start."""


class ParseError(HorizonMatchError, ValueError):
    """A data file could not be parsed under the declared format."""

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class MissingValueError(HorizonMatchError, ValueError):
    """A missing-value sentinel was found inside the requested year range."""

    def __init__(self, year: int):
        super().__init__(f"missing value for year {year}")
        self.year = year


class EmptyRangeError(HorizonMatchError, ValueError):
    """No usable data rows in the requested range."""


class NonPositivePriceError(HorizonMatchError, ValueError):
    """A price is zero or negative where a log return was requested."""

    def __init__(self, index: int):
        super().__init__(f"non-positive price at position {index}")
        self.index = index
