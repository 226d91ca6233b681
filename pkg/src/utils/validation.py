"""
Small numeric validators shared by the models and the solver.
"""
import math
from typing import Any

from src.core.errors import DomainError


def is_finite_number(x: Any) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def ensure_finite(name: str, x: float) -> float:
    if not is_finite_number(x):
        raise DomainError(f"{name} must be a finite number, got {x!r}")
    return float(x)


def ensure_non_negative_int(name: str, n: Any) -> int:
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise DomainError(f"{name} must be a non-negative integer, got {n!r}")
    return n
