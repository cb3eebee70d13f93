"""Exception types shared across the package."""


class ClosedWeighError(Exception):
    """Base class for all errors raised by this package."""


class ContractViolationError(ClosedWeighError):
    """An operation was called with inputs that break its preconditions."""


class NumericalContractError(ClosedWeighError):
    """A numerical tolerance the implementation promises was not met."""


class StabilityError(NumericalContractError):
    """A propagation step size violates the stability contract."""


class SingularityError(ClosedWeighError):
    """The measurement back-reaction factor 1 + g(tau) z touched zero."""


class ProfileSupportError(ClosedWeighError):
    """A coupling window does not fit inside the clock grid with margin."""


class ReadoutTimingError(ClosedWeighError):
    """Pointer readout requested before the measurement window completed."""


class ConfigError(ClosedWeighError):
    """Invalid run configuration. Carries optional source location."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)
