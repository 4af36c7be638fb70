class DomainError(ValueError):
    """Input outside the supported integer domain."""


class ResourceError(RuntimeError):
    """A configured memory or generation ceiling would be exceeded."""


class PropertyViolation(AssertionError):
    """Raised when a pinned invariant of the generator itself is broken."""
