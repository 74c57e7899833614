"""Exception hierarchy shared across the toolkit."""


class SsamaskError(Exception):
    """Base class for all toolkit errors."""


class ParameterError(SsamaskError):
    """An argument is out of range or inconsistent with the data."""


class GroupingError(SsamaskError):
    """An eigentriple grouping is invalid for the decomposition at hand."""

    def __init__(self, message, offending_indices=()):
        super().__init__(message)
        self.offending_indices = tuple(offending_indices)


class NumericalError(SsamaskError):
    """A numerical routine failed; carries solver diagnostics."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class IngestionError(SsamaskError):
    """A microfile could not be parsed; carries the offending line number."""

    def __init__(self, message, line_number=None):
        super().__init__(message)
        self.line_number = line_number


class DefinitionError(SsamaskError):
    """A group definition references attributes absent from the schema."""


class SynthesisError(SsamaskError):
    """A masked signal cannot be propagated back into microfile records."""

    def __init__(self, message, bucket=None):
        super().__init__(message)
        self.bucket = bucket


class StateError(SsamaskError):
    """A session operation was requested before its prerequisites exist."""


class UnknownSessionError(SsamaskError):
    """No session with the given id."""


class StaleRevisionError(SsamaskError):
    """A mutation was based on an outdated session revision."""

    def __init__(self, message, expected=None, got=None):
        super().__init__(message)
        self.expected = expected
        self.got = got


class VerificationError(SsamaskError):
    """Bundled reference fixtures are missing or unreadable."""
