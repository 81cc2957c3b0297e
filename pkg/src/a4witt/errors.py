"""Exception types shared across the package."""


class A4WittError(Exception):
    """Base class for all errors raised by a4witt."""


class FactorizationExceeded(A4WittError):
    """An integer is too large (or too hard) to factor under the current budget."""


class ZeroSymbolArgument(A4WittError, ValueError):
    """A Hilbert symbol was requested with a zero argument."""


class ParseError(A4WittError, ValueError):
    def __init__(self, message, text=None, position=None):
        self.text = text
        self.position = position
        if text is not None and position is not None:
            message = f"{message} at position {position}\n  {text}\n  {' ' * position}^"
        super().__init__(message)


class NotDivisible(A4WittError, ArithmeticError):
    """Exact polynomial division was requested but the divisor does not divide."""


class NoProportionality(A4WittError):
    """Neither candidate modulus makes the pencil remainder proportional to Q."""


class DegenerateResolvent(A4WittError, ZeroDivisionError):
    """b0 vanishes, so the (a) <-> (c) coordinates are undefined."""


class NumericDegenerate(A4WittError):
    """A numeric check was skipped because a denominator is too small."""


class SingularInput(A4WittError, ValueError):
    """The polynomial has a repeated root (zero discriminant)."""


class ReducibleInput(A4WittError, ValueError):
    def __init__(self, message, shape=None):
        super().__init__(message)
        self.shape = shape


class NotSquarefree(A4WittError, ValueError):
    pass


class DegenerateForm(A4WittError, ValueError):
    """The quadratic form has a zero determinant."""


class NoConventionMatches(A4WittError):
    pass


class NoSignMatches(A4WittError):
    pass


class UndefinedSymbol(A4WittError, ValueError):
    """A symbol argument of the obstruction formula vanishes."""


class DegenerateParams(A4WittError, ValueError):
    def __init__(self, constraint):
        super().__init__(f"degenerate parameters: {constraint}")
        self.constraint = constraint
