"""
Exception hierarchy shared by the solver, the sweep pipeline and the CLI.

The CLI maps ConfigError/ParseError to exit code 2 and every other CylRespError
to exit code 3.
"""
from __future__ import annotations
from typing import Any, Optional


class CylRespError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(CylRespError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class RangeError(CylRespError, OverflowError):
    def __init__(self, message: str, x: float):
        super().__init__(message)
        self.x = x


class ParseError(CylRespError, ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class TableValidationError(CylRespError, ValueError):
    pass


class ConfigError(CylRespError, ValueError):
    def __init__(self, message: str, key: Optional[str] = None, line: Optional[int] = None):
        prefix = []
        if line is not None:
            prefix.append(f"line {line}")
        if key is not None:
            prefix.append(f"key '{key}'")
        if prefix:
            message = f"{', '.join(prefix)}: {message}"
        super().__init__(message)
        self.key = key
        self.line = line


class RoutingError(CylRespError):
    """The system shape requested does not match the excitation/classification."""


class ContractError(CylRespError):
    """Inputs that must belong together (solution, classification, excitation) do not."""


class SingularConfigurationError(CylRespError):
    def __init__(self, message: str, classification: Any = None):
        super().__init__(message)
        self.classification = classification


class SingularMatrixError(CylRespError):
    pass


class ResonanceError(CylRespError):
    def __init__(self, message: str, determinant: float):
        super().__init__(f"{message} (det={determinant!r})")
        self.determinant = determinant
