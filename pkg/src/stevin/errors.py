"""Exception hierarchy shared by every module.

The CLI reports ``type(exc).__name__`` for any :class:`StevinError`, so the
class names double as the error vocabulary of the JSON reports.
"""


class StevinError(Exception):
    """Base class for mathematical failures (CLI exit code 1)."""


class ExpressionSyntaxError(StevinError, ValueError):
    def __init__(self, message, text="", position=None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class PolynomialSyntaxError(ExpressionSyntaxError):
    pass


class NoSignChange(StevinError, ValueError):
    pass


class BudgetExhausted(StevinError, RuntimeError):
    pass


class NegativeLeadingCoefficient(StevinError, ValueError):
    pass


class NonRationalSquareRoot(StevinError, ValueError):
    pass


class Unlimited(StevinError, ValueError):
    pass


class Inconclusive(StevinError, RuntimeError):
    pass


class UnsupportedGenerator(StevinError, ValueError):
    pass


class DivisorVanishesOnLargeSet(StevinError, ZeroDivisionError):
    pass


class NotFinite(StevinError, ValueError):
    pass


class Undecided(StevinError, ValueError):
    pass


class UnsupportedForm(StevinError, ValueError):
    pass
