"""Exception hierarchy shared by every layer.

The CLI maps each class to its own exit status, so callers should raise the
most specific one.
"""


class GrGradError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class InputError(GrGradError, ValueError):
    """Malformed arguments: unknown ids, dimension mismatches, bad shapes."""

    exit_code = 2


class ParseError(InputError):
    """A ring/module document could not be decoded."""

    exit_code = 2


class ValidationError(GrGradError):
    """A structure violates the axioms it claims to satisfy."""

    exit_code = 3

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ResourceBudgetError(GrGradError):
    """An exhaustive oracle would exceed its enumeration budget."""

    exit_code = 4


class ConsistencyError(GrGradError):
    """Two independent computations of the same quantity disagree."""

    exit_code = 5
