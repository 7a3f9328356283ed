"""Error hierarchy for Faultline

Every error raised on purpose by the library derives from FaultlineError so the
CLI can map it onto an exit code.
"""


class FaultlineError(Exception):
    """Base class for all Faultline errors"""

    exit_code = 1


class ValidationError(FaultlineError, ValueError):
    """Input violates a documented precondition

    Raised for malformed tensors, rows, programs and parameters. Carries an
    optional line number when the input came from a file.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class IndefiniteTensorError(ValidationError):
    """Reshaped two-electron tensor has a significantly negative eigenvalue"""


class CapacityError(FaultlineError):
    """Dense simulation requested beyond the supported qubit count"""


class VerificationError(FaultlineError):
    """An oracle-backed verification suite failed"""

    exit_code = 2
