"""Dense-matrix plumbing: size cap, LU-based inverse, induced norms."""
from __future__ import annotations

import math
import os

import numpy as np
import scipy.linalg

from .errors import ResourceError, SingularityError

DEFAULT_MAX_DENSE = 5000
ENV_MAX_DENSE = "GHOSTLAP_MAX_DENSE"

# Process-wide override set by the CLI (--max-dense-size); takes precedence over the env var.
_override: int | None = None


def set_max_dense_size(value: int | None) -> None:
    global _override
    if value is not None and value < 1:
        raise ValueError("max dense size must be positive")
    _override = value


def max_dense_size() -> int:
    if _override is not None:
        return _override
    raw = os.environ.get(ENV_MAX_DENSE)
    if raw:
        try:
            value = int(raw)
        except ValueError as exc:
            raise ValueError(f"{ENV_MAX_DENSE} must be an integer, got {raw!r}") from exc
        if value < 1:
            raise ValueError(f"{ENV_MAX_DENSE} must be positive")
        return value
    return DEFAULT_MAX_DENSE


def check_size(rows: int, what: str = "matrix") -> None:
    cap = max_dense_size()
    if rows > cap:
        raise ResourceError(f"{what} with {rows} rows exceeds the dense size cap {cap}")


def dense_inverse(matrix: np.ndarray) -> np.ndarray:
    """Inverse via partial-pivoting LU factorization."""
    matrix = np.asarray(matrix, dtype=float)
    check_size(matrix.shape[0])
    try:
        lu, piv = scipy.linalg.lu_factor(matrix, check_finite=True)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise SingularityError(str(exc)) from exc
    if np.any(np.diag(lu) == 0.0):
        raise SingularityError("matrix is singular to working precision")
    return scipy.linalg.lu_solve((lu, piv), np.eye(matrix.shape[0]))


def induced_norm(matrix: np.ndarray, p) -> float:
    """Matrix norm induced by the vector p-norm, p in {1, 2, inf}."""
    matrix = np.asarray(matrix)
    if p == 1:
        return float(np.abs(matrix).sum(axis=0).max())
    if p == 2:
        return float(scipy.linalg.svdvals(matrix)[0])
    if p == math.inf:
        return float(np.abs(matrix).sum(axis=1).max())
    raise ValueError(f"unsupported p={p!r}; expected 1, 2 or inf")


def parse_p(value) -> float:
    """Accept 1, 2, inf (number or string) and return 1, 2 or math.inf."""
    if isinstance(value, str):
        text = value.strip().lower()
        if text == "inf":
            return math.inf
        try:
            value = int(text)
        except ValueError:
            raise ValueError(f"invalid p {value!r}; expected 1, 2 or inf") from None
    if value == math.inf:
        return math.inf
    if value in (1, 2):
        return int(value)
    raise ValueError(f"invalid p {value!r}; expected 1, 2 or inf")


def format_p(p) -> str:
    return "inf" if p == math.inf else str(int(p))


def to_banded(matrix: np.ndarray, lower: int, upper: int) -> np.ndarray:
    """Diagonal-ordered storage expected by scipy.linalg.solve_banded."""
    m = matrix.shape[0]
    ab = np.zeros((lower + upper + 1, m))
    for k in range(-lower, upper + 1):
        diag = np.diagonal(matrix, k)
        if k >= 0:
            ab[upper - k, k:] = diag
        else:
            ab[upper - k, : m + k] = diag
    return ab


def bandwidths(matrix: np.ndarray) -> tuple[int, int]:
    rows, cols = np.nonzero(matrix)
    if rows.size == 0:
        return 0, 0
    offset = cols - rows
    return int(max(0, -offset.min())), int(max(0, offset.max()))
