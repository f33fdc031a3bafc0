"""Dense vector/matrix helpers and the operator norms used by the margin bounds.

Everything works on plain numpy arrays in float64. Matrices are 2-D
(rows x cols), vectors are 1-D. The induced norms are computed by direct
row/column scans, which is exact for the (inf, inf) and (1, 1) cases.
"""

import numpy as np


class DimensionMismatchError(ValueError):
    """Raised when array shapes are incompatible for an operation."""


def as_matrix(w) -> np.ndarray:
    """Coerce to a finite 2-D float64 array, validating the invariants."""
    arr = np.asarray(w, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={arr.ndim}")
    if arr.size == 0:
        raise ValueError("matrix must have positive row and column counts")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite (no NaN/Inf)")
    return arr


def as_vector(x) -> np.ndarray:
    """Coerce to a finite 1-D float64 array, validating the invariants."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got ndim={arr.ndim}")
    if arr.size == 0:
        raise ValueError("vector must have positive dimension")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector entries must be finite (no NaN/Inf)")
    return arr


def mat_vec_mul(w: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Matrix-vector product Wx with an explicit dimension check."""
    w = as_matrix(w)
    x = as_vector(x)
    if w.shape[1] != x.shape[0]:
        raise DimensionMismatchError(
            f"matrix has {w.shape[1]} columns but vector has dim {x.shape[0]}"
        )
    return w @ x


def relu(x: np.ndarray) -> np.ndarray:
    """Element-wise max(0, x)."""
    return np.maximum(np.asarray(x, dtype=np.float64), 0.0)


def vec_l1(x: np.ndarray) -> float:
    """l1 norm: sum of absolute entries."""
    return float(np.sum(np.abs(as_vector(x))))


def vec_inf(x: np.ndarray) -> float:
    """l-infinity norm: maximum absolute entry."""
    return float(np.max(np.abs(as_vector(x))))


def mat_inf_norm(w: np.ndarray) -> float:
    """Induced inf-norm ||W||_inf: maximum absolute row sum."""
    return float(np.max(np.sum(np.abs(as_matrix(w)), axis=1)))


def mat_one_norm(w: np.ndarray) -> float:
    """Induced 1-norm ||W||_1: maximum absolute column sum."""
    return float(np.max(np.sum(np.abs(as_matrix(w)), axis=0)))


def row_diff_l1(w: np.ndarray, i: int, j: int) -> float:
    """l1 norm of the difference between rows i and j of W."""
    w = as_matrix(w)
    rows = w.shape[0]
    if not (0 <= i < rows) or not (0 <= j < rows):
        raise IndexError(f"row indices ({i}, {j}) out of range for {rows} rows")
    return float(np.sum(np.abs(w[i, :] - w[j, :])))
