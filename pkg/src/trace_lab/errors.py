"""Exception hierarchy shared by every module."""


class TraceLabError(Exception):
    pass


class InvalidArgument(TraceLabError, ValueError):
    pass


class ContractError(TraceLabError, ValueError):
    """A hypothesis of a bound or a documented precondition does not hold.

    ``diagnostics`` carries the values that were checked.
    """

    def __init__(self, message, **diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics


class CapacityError(TraceLabError):
    pass


class NumericError(TraceLabError, ArithmeticError):
    pass


class ConstructionFailure(TraceLabError, RuntimeError):
    def __init__(self, message, histogram=None, attempts=0):
        super().__init__(message)
        self.histogram = dict(histogram or {})
        self.attempts = attempts


class PartialResult(TraceLabError, RuntimeError):
    """Raised when an oracle enumeration runs out of budget."""

    def __init__(self, message, best_so_far=None, explored=0):
        super().__init__(message)
        self.best_so_far = best_so_far
        self.explored = explored


class ParseError(TraceLabError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
