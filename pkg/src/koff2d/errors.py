"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside a function's mathematical domain."""


class ParameterError(ValueError):
    """Parameter set violates a declared invariant; names the field."""
