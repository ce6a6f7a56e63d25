class RimNullError(Exception):
    """Base class for every error raised by RimNullX."""


class ConfigError(RimNullError):
    """Run configuration failed validation."""


class DomainError(RimNullError, ValueError):
    """A numeric input lies outside the domain of an operation."""


class DyadLookupError(RimNullError, KeyError):
    """No reflection dyad is available for the requested key."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "dyad lookup failed"


class ContractViolation(RimNullError, ValueError):
    """An operation precondition was violated by the caller."""


class GeometryWarning(UserWarning):
    """Recoverable geometry condition (e.g. an annulus too narrow to tile)."""
