"""Exception hierarchy shared by all modules."""


class CuspZetaError(Exception):
    """Base class for every error raised by the package."""


class DomainError(CuspZetaError, ValueError):
    """Argument outside the domain of the function (e.g. a pole of Gamma)."""


class RangeError(CuspZetaError, ValueError):
    """Argument outside the range where the chosen method is valid."""


class ParseError(CuspZetaError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(CuspZetaError, ValueError):
    """Input data violates a structural invariant."""


class ConsistencyError(CuspZetaError, ArithmeticError):
    """An exact identity that must hold failed."""


class ConvergenceError(CuspZetaError, ArithmeticError):
    def __init__(self, message: str, bound: float | None = None):
        self.bound = bound
        super().__init__(message)


class NumericError(CuspZetaError, ArithmeticError):
    """Quadrature or another numerical procedure failed its accuracy target."""


class PoleError(CuspZetaError, ZeroDivisionError):
    """Evaluation at a pole; carries the offending ledger entry when known."""

    def __init__(self, message: str, entry=None):
        self.entry = entry
        super().__init__(message)
