"""Exception hierarchy shared by the numerical modules and the CLI."""


class SingZetaError(Exception):
    """Base class for all library errors."""

    exit_code = 3


class ConfigError(SingZetaError, ValueError):
    """Invalid parameters (coupling, extension, orders, flags)."""

    exit_code = 1


class DomainError(ConfigError):
    """Argument outside the domain of a function."""


class DExtensionError(ConfigError):
    """The extension has alpha = 0, so no finite rho exists."""


class PoleError(SingZetaError, ValueError):
    """Evaluation requested at (or numerically on top of) a pole."""

    exit_code = 1


class OutOfStripError(ConfigError):
    """Requested s lies outside the validity strip of a representation."""


class AccuracyLossError(SingZetaError, ArithmeticError):
    """Requested accuracy could not be reached; carries the achieved bound."""

    exit_code = 2

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class ToleranceError(SingZetaError):
    """A cross-check exceeded its tolerance."""

    exit_code = 2


class StructuralError(SingZetaError):
    """Bracketing, interlacing or bookkeeping invariants were violated."""

    exit_code = 3
