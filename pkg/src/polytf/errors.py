"""Exception types raised by polytf."""


class PolytfError(Exception):
    """Base class for all library errors."""


class ParameterError(PolytfError, ValueError):
    """Invalid weight-family parameters or coefficient data."""


class WindowError(PolytfError, ValueError):
    """A degree window (m, n) or index is out of range."""


class DomainError(PolytfError, ValueError):
    """An argument lies outside the domain where the operation is defined."""


class NormalizationError(PolytfError, ValueError):
    """A function that must have unit norm does not."""


class NumericalError(PolytfError, ArithmeticError):
    """A numerical routine failed to converge or lost accuracy.

    Parameters
    ----------
    message : str
        Human readable description.
    **diagnostics
        Free-form values describing the failure (iteration counts, residuals).
    """

    def __init__(self, message, **diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics

    def __str__(self):
        base = super().__str__()
        if not self.diagnostics:
            return base
        extra = ", ".join(f"{k}={v!r}" for k, v in self.diagnostics.items())
        return f"{base} ({extra})"
