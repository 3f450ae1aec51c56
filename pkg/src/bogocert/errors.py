"""Exception hierarchy.

Every error carries the process exit code the CLI should use when it
escapes to the top level.
"""


class BogocertError(Exception):
    exit_code = 1


class InvalidArgument(BogocertError, ValueError):
    exit_code = 2


class DomainError(InvalidArgument):
    """A value outside the domain of a real function (e.g. log of 0)."""


class SchemaError(InvalidArgument):
    """Malformed input document.  ``field`` names the offending key."""

    def __init__(self, message, field=None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field


class SingularModel(SchemaError):
    pass


class UnsupportedPrime(BogocertError):
    """The order Z[theta] is not p-maximal, so splitting cannot be read off."""

    exit_code = 2


class UnsupportedCharacteristic(InvalidArgument):
    pass


class PotentiallyMultiplicative(BogocertError):
    """j is not integral at the chosen prime."""

    exit_code = 2


class BudgetExceeded(BogocertError):
    exit_code = 3


class VerificationFailure(BogocertError):
    exit_code = 4
