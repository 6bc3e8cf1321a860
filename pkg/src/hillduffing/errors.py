"""Exception types shared across the library."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class IntegrationFailure(RuntimeError):
    """The adaptive ODE integrator exceeded its step cap or underflowed."""


class BracketNotFound(RuntimeError):
    """No trace-level crossing was detected inside the seeded window."""
