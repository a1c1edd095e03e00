"""Exception types shared across the toolkit."""


class UsageError(ValueError):
    """Caller asked for something invalid (bad arguments, bad configuration)."""


class DataError(ValueError):
    """Input data is malformed; carries the offending line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
