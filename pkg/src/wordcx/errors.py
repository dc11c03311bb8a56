"""Exception hierarchy shared by the library and the CLI."""


class WordcxError(Exception):
    """Base class; ``kind`` is the machine-readable tag used by the CLI."""

    kind = "error"


class ConfigurationError(WordcxError, ValueError):
    kind = "configuration"


class AlphabetError(WordcxError, ValueError):
    kind = "alphabet"


class BoundsError(WordcxError, IndexError):
    kind = "bounds"


class ScheduleDepthError(WordcxError, IndexError):
    kind = "schedule-depth-exceeded"


class ScheduleCapError(WordcxError, ArithmeticError):
    kind = "f-grows-too-slowly-for-cap"


class PreconditionError(WordcxError, ValueError):
    kind = "precondition"


class CertificateError(WordcxError, AssertionError):
    kind = "certificate"


class GateError(WordcxError, RuntimeError):
    """Raised when the doubling gate cannot confirm a profile."""

    kind = "gate"

    def __init__(self, message, first_unstable=None):
        super().__init__(message)
        self.first_unstable = first_unstable
