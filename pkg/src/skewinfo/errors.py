"""Exception types raised across the package."""


class SkewInfoError(Exception):
    """Base class for all errors raised by skewinfo."""


class ShapeMismatch(SkewInfoError, ValueError):
    pass


class NotHermitian(SkewInfoError, ValueError):
    pass


class NotPSD(SkewInfoError, ValueError):
    pass


class NoConvergence(SkewInfoError, ArithmeticError):
    pass


class BlochVectorTooLong(SkewInfoError, ValueError):
    pass


class ParamOutOfRange(SkewInfoError, ValueError):
    pass


class NotPure(SkewInfoError, ValueError):
    pass


class NotCPTP(SkewInfoError, ValueError):
    """Kraus operators fail the completeness check sum K^dag K = I."""


class NotUnitary(SkewInfoError, ValueError):
    pass


class TooFewChannels(SkewInfoError, ValueError):
    pass


class SearchBudgetExceeded(SkewInfoError, RuntimeError):
    pass


class ParseError(SkewInfoError, ValueError):
    pass


class ValidationError(SkewInfoError, ValueError):
    pass
