"""Exception types shared across the package."""


class BsvaError(Exception):
    """Base class for all errors raised by bsva."""


class InvalidDenominator(BsvaError, ZeroDivisionError):
    pass


class InvalidParams(BsvaError, ValueError):
    pass


class WordSyntaxError(BsvaError, ValueError):
    pass


class GluingConflict(BsvaError, ValueError):
    """Two pieces of a glued partial map overlap in domain or image."""

    def __init__(self, message, first=None, second=None):
        super().__init__(message)
        self.first = first
        self.second = second


class BudgetExhausted(BsvaError, RuntimeError):
    """A node or edge budget ran out; ``partial`` holds what was built so far."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
