"""Exception types shared across the toolkit."""


class DorrohError(Exception):
    pass


class InputError(DorrohError):
    """Malformed input: bad dimensions, unparseable scalars, unknown names."""


class PreconditionError(InputError):
    """An operation's stated precondition does not hold."""


class ValidationFailure(DorrohError):
    """A structural check failed; carries the report with the witness."""

    def __init__(self, report, message=""):
        self.report = report
        super().__init__(message or report.headline())
