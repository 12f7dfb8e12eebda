"""Quantum-inspired perceptron networks with derivative-free training."""

from .errors import ConfigError, DomainError, NumericError, PersistenceError

__version__ = "0.1.0"

__all__ = ["ConfigError", "DomainError", "NumericError", "PersistenceError", "__version__"]
