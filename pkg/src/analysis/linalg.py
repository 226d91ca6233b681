"""
Dense 1x1 / 2x2 / 3x3 helpers: Gaussian elimination with partial pivoting,
cofactor determinants and row equilibration.
"""
from __future__ import annotations
from typing import Sequence, Tuple

import numpy as np

from src.core.errors import ContractError, SingularMatrixError

SUPPORTED_SIZES = (1, 2, 3)


def _as_system(matrix, rhs) -> Tuple[np.ndarray, np.ndarray]:
    a = np.array(matrix, dtype=float)
    b = np.array(rhs, dtype=float).reshape(-1)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] not in SUPPORTED_SIZES:
        raise ContractError(f"expected a square 1x1, 2x2 or 3x3 matrix, got shape {a.shape}")
    if b.shape[0] != a.shape[0]:
        raise ContractError(f"rhs length {b.shape[0]} does not match matrix size {a.shape[0]}")
    return a, b


def solve_generic(matrix: Sequence[Sequence[float]], rhs: Sequence[float]) -> np.ndarray:
    """Solve A x = b by elimination with partial (row) pivoting."""
    a, b = _as_system(matrix, rhs)
    n = b.shape[0]
    for k in range(n - 1):
        p = int(np.argmax(np.abs(a[k:, k]))) + k
        if a[p, k] == 0.0:
            raise SingularMatrixError(f"zero pivot in column {k}")
        if p != k:
            a[[k, p]] = a[[p, k]]
            b[[k, p]] = b[[p, k]]
        for i in range(k + 1, n):
            if a[i, k] != 0.0:
                lam = a[i, k] / a[k, k]
                a[i, k + 1:] -= lam * a[k, k + 1:]
                a[i, k] = 0.0
                b[i] -= lam * b[k]
    if a[n - 1, n - 1] == 0.0:
        raise SingularMatrixError(f"zero pivot in column {n - 1}")
    x = np.zeros(n)
    for k in range(n - 1, -1, -1):
        x[k] = (b[k] - np.dot(a[k, k + 1:], x[k + 1:])) / a[k, k]
    return x


def cofactor_determinant(matrix: Sequence[Sequence[float]]) -> float:
    a = np.asarray(matrix, dtype=float)
    n = a.shape[0]
    if n == 1:
        return float(a[0, 0])
    if n == 2:
        return float(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])
    if n == 3:
        return float(
            a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
            - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
            + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0])
        )
    raise ContractError(f"cofactor expansion implemented for sizes 1-3, got {n}")


def row_scaled(matrix: Sequence[Sequence[float]]) -> np.ndarray:
    """Each row divided by its largest absolute entry (zero rows left as is)."""
    a = np.array(matrix, dtype=float)
    scales = np.max(np.abs(a), axis=1)
    scales[scales == 0.0] = 1.0
    return a / scales[:, None]


def scaled_determinant(matrix: Sequence[Sequence[float]]) -> float:
    return cofactor_determinant(row_scaled(matrix))


def residual_norm(matrix, x, rhs) -> float:
    """||A x - b||_inf / ||b||_inf (absolute when b = 0)."""
    a = np.asarray(matrix, dtype=float)
    b = np.asarray(rhs, dtype=float)
    r = float(np.max(np.abs(a @ np.asarray(x, dtype=float) - b)))
    scale = float(np.max(np.abs(b))) if b.size else 0.0
    return r / scale if scale > 0 else r
