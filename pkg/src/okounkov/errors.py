"""Exception hierarchy shared by the library and the command line front end."""


class OkounkovError(Exception):
    """Base class for all library errors."""

    exit_code = 2


class DomainError(OkounkovError, ValueError):
    """Input lies outside the domain of an operation (e.g. not pseudo-effective)."""


class ModelInconsistent(OkounkovError):
    """Model data violates an audit (cone coverage, p + n = id, ...)."""


class AdmissibilityError(OkounkovError):
    """The flag meets the indeterminacy locus of a small modification."""

    exit_code = 3

    def __init__(self, message, chambers=()):
        super().__init__(message)
        self.chambers = tuple(chambers)


class FlagWarning(UserWarning):
    """The flag curve may lie in the augmented base locus of the divisor."""
