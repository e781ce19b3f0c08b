"""Exception hierarchy shared by all modules."""


class WreError(Exception):
    """Base class for library errors."""


class ParameterError(WreError, ValueError):
    """An argument is outside its documented range."""


class DomainError(WreError, ValueError):
    """A closed-form expression is evaluated outside its domain."""


class ContractError(WreError, ValueError):
    """An input violates a structural precondition (e.g. Hermiticity)."""


class DegenerateInputError(WreError, ValueError):
    """Input is degenerate, e.g. an all-zero matrix or a vanishing eigenvalue."""


class ConfigurationError(ParameterError):
    """An experiment configuration cannot be run as requested."""
