class DomainError(ValueError):
    """Input outside the domain an operation is defined on."""


class DegeneracyError(DomainError):
    """A linear system or constraint set is singular or vacuous."""
