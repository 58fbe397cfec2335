"""Exception types shared across the package."""


class PrimeSineError(Exception):
    """Base class for all errors raised by primesine."""


class InvalidArgument(PrimeSineError, ValueError):
    pass


class NotInvertible(PrimeSineError, ArithmeticError):
    pass


class OutOfFastPath(PrimeSineError, ValueError):
    """Raised when the closed-form term is requested at or below k0."""


class PrecisionError(PrimeSineError, ArithmeticError):
    """Input precision cannot support the requested evaluation.

    ``required_digits`` carries the digit count that would have sufficed.
    """

    def __init__(self, message: str, required_digits: int):
        super().__init__(message)
        self.required_digits = required_digits


class PrecisionAmbiguity(PrimeSineError, ArithmeticError):
    """The fractional part of a sum lies within its error bound of an integer."""


class ResourceError(PrimeSineError, RuntimeError):
    pass


class NotFound(PrimeSineError, LookupError):
    pass
