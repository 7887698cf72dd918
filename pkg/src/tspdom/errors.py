"""Exception types shared across the package."""


class FormatError(ValueError):
    """A file or text blob does not conform to one of the supported formats."""


class PreconditionError(ValueError):
    """An algorithm was invoked on an input outside its stated hypotheses.

    The message is machine-readable: ``"<check>: <detail>"``.
    """

    def __init__(self, check: str, detail: str):
        super().__init__(f"{check}: {detail}")
        self.check = check
        self.detail = detail


class InternalCheckError(AssertionError):
    """A runtime self-check that is supposed to be a theorem failed.

    Raised when a structural invariant of a construction does not hold,
    which indicates a bug rather than bad input.
    """
