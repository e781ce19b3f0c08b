"""Entropy and dominant eigenvalue of random reduced density matrices."""

from wre.errors import (
    ConfigurationError,
    ContractError,
    DegenerateInputError,
    DomainError,
    ParameterError,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigurationError",
    "ContractError",
    "DegenerateInputError",
    "DomainError",
    "ParameterError",
    "__version__",
]
