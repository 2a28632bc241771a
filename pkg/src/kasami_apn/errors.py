"""Exception types shared by the field, equation and power-map modules."""


class KasamiError(Exception):
    """Base class for domain errors (the CLI maps these to exit code 2)."""


class InvalidField(KasamiError, ValueError):
    pass


class DivisionByZero(KasamiError, ZeroDivisionError):
    pass


class NotInvertibleExponent(KasamiError, ValueError):
    pass


class NotCoprime(KasamiError, ValueError):
    pass


class InvalidU(KasamiError, ValueError):
    pass


class DegenerateU(KasamiError, ValueError):
    pass


class NoThreeSolutions(KasamiError, ValueError):
    pass


class OutsideLemmaScope(KasamiError, ValueError):
    pass


class ZeroDirection(KasamiError, ValueError):
    pass


class ParityError(KasamiError, ValueError):
    pass


class ParityMismatch(KasamiError, ValueError):
    pass


class LemmaCounterexample(KasamiError, ArithmeticError):
    """A closed-form parameterization failed its substitution check."""


class HypothesisViolated(UserWarning):
    """Emitted when a check runs outside the hypotheses of the result it tests."""


class InvalidArgument(KasamiError, ValueError):
    pass
