class SymDeltaError(Exception):
    """Base class for errors raised by this package."""


class ComplexFormatError(SymDeltaError, ValueError):
    """Structurally ill-formed complex data (bad keys, targets, or shapes)."""


class DimensionError(SymDeltaError, ValueError):
    pass


class FactorialLimitError(SymDeltaError, ValueError):
    pass


class PreconditionError(SymDeltaError, ValueError):
    pass


class InvalidDMFError(SymDeltaError, ValueError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InvalidMatchingError(SymDeltaError, ValueError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class UnknownOrbitError(SymDeltaError, KeyError):
    pass
