"""Exception hierarchy shared by every module of the package."""


class BetheError(Exception):
    """Base class for all domain errors raised by :mod:`bethe_sp`."""


class DivisionByZero(BetheError, ZeroDivisionError):
    pass


class PoleAtZero(BetheError):
    """A rational function in eps has a genuine pole at eps = 0."""


class DuplicatePoints(BetheError, ValueError):
    pass


class NonSquare(BetheError, ValueError):
    pass


class PoleError(BetheError):
    """A kernel was evaluated at one of its singular points.

    ``pair`` holds the offending arguments when they are known.
    """

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class MissingRValue(BetheError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class BadCardinality(BetheError, ValueError):
    pass


class CardinalityMismatch(BetheError, ValueError):
    pass


class ConstraintViolation(BetheError):
    pass


class ZeroPivot(BetheError):
    def __init__(self, message, admissible=()):
        super().__init__(message)
        self.admissible = tuple(admissible)


class ParseError(BetheError, ValueError):
    def __init__(self, message, field=None):
        if field is not None:
            message = f"{field}: {message}"
        super().__init__(message)
        self.field = field


class BudgetExceeded(BetheError):
    pass
