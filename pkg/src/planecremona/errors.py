"""Exception hierarchy shared by every module.

ValidationError means "the input was rejected by a documented precondition";
the CLI maps it to exit code 2 with a machine-readable reason. Anything else
escaping to the CLI is an internal error (exit 1).
"""


class ValidationError(ValueError):
    """Input rejected by a documented precondition or validation rule."""

    def __init__(self, reason: str, message: str | None = None):
        self.reason = reason
        super().__init__(message or reason)


class IndeterminacyError(ValidationError):
    """An operation landed on a base point where the map is undefined."""

    def __init__(self, message: str = "map is indeterminate at this point"):
        super().__init__("indeterminate", message)


class ExtractionError(ValidationError):
    """Residual-point extraction failed after the bounded number of retries."""

    def __init__(self, message: str):
        super().__init__("extraction failed", message)
