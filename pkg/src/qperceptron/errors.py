"""Exception hierarchy shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class NumericError(ArithmeticError):
    """A numerical procedure failed to converge or produced non-finite values."""

    def __init__(self, message, residual=None, step=None):
        super().__init__(message)
        self.residual = residual
        self.step = step


class ConfigError(ValueError):
    """Invalid experiment configuration; ``field`` names the offending key."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


class PersistenceError(Exception):
    """Base class for network file errors."""


class FormatVersionError(PersistenceError):
    pass


class MalformedFileError(PersistenceError):
    pass


class ShapeError(PersistenceError):
    pass
