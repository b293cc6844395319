"""Exception types shared across the package."""


class QAdaPruneError(Exception):
    """Base class for all errors raised by this package."""


class InputError(QAdaPruneError, ValueError):
    """Malformed arguments, mismatched sizes, bad files."""


class NumericError(QAdaPruneError, ArithmeticError):
    """A non-finite value showed up in a cost, gradient or update.

    ``slot`` names the offending parameter slot when one is known.
    """

    def __init__(self, message, slot=None):
        super().__init__(message)
        self.slot = slot


class CapabilityError(QAdaPruneError):
    """The request is valid but exceeds what this implementation supports."""


class ParseError(InputError):
    """A data file line could not be parsed; ``lineno`` is 1-based."""

    def __init__(self, message, path=None, lineno=None):
        where = f"{path}:{lineno}: " if path is not None and lineno is not None else ""
        super().__init__(where + message)
        self.path = path
        self.lineno = lineno
