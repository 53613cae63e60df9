"""n x 2 matrices with orthonormal columns.

Rows are stored as an ``(n, 2)`` float array.  Orthonormality of the columns
is equivalent to the row squares ``w_i`` closing up into a polygon of
perimeter 2: ``sum(w_i) = 0`` and ``sum(|w_i|) = 2``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, OrthonormalityError, RankDeficiencyError

__all__ = [
    "EPS_ORTH",
    "StiefelMatrix",
    "RowSquares",
    "orthonormality_residual",
    "validate",
    "row_squares",
    "squares_of",
    "sample_haar",
    "rotate_right",
    "reorthonormalize",
]

EPS_ORTH = 1e-10
RANK_EPS = 1e-12


@dataclass(frozen=True)
class StiefelMatrix:
    rows: np.ndarray
    residual: float

    @property
    def n(self):
        return self.rows.shape[0]

    def __len__(self):
        return self.n


@dataclass(frozen=True)
class RowSquares:
    w: np.ndarray
    magnitudes: np.ndarray

    @property
    def n(self):
        return self.w.shape[0]


def _as_rows(rows):
    arr = np.array(rows, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise DimensionError(f"expected an n x 2 array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite")
    return arr


def orthonormality_residual(rows):
    """Return ``max |A^T A - I|`` for an ``(n, 2)`` array."""
    a = np.asarray(rows, dtype=float)
    return float(np.max(np.abs(a.T @ a - np.eye(2))))


def _freeze(arr, residual):
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return StiefelMatrix(arr, float(residual))


def validate(rows, tol=EPS_ORTH):
    """Check that ``rows`` has orthonormal columns and wrap it.

    Raises
    ------
    DimensionError
        Fewer than three rows, or not two columns.
    OrthonormalityError
        ``max |A^T A - I| > tol``; the exception carries the residual.
    """
    arr = _as_rows(rows)
    if arr.shape[0] < 3:
        raise DimensionError(f"need n >= 3 rows, got {arr.shape[0]}")
    res = orthonormality_residual(arr)
    if res > tol:
        raise OrthonormalityError(res, tol)
    return _freeze(arr, res)


def squares_of(rows):
    """Vector squares of each row of an ``(n, 2)`` array."""
    a = np.asarray(rows, dtype=float)
    x, y = a[:, 0], a[:, 1]
    return np.column_stack((x * x - y * y, 2.0 * x * y))


def row_squares(A):
    w = squares_of(A.rows)
    mags = np.hypot(w[:, 0], w[:, 1])
    return RowSquares(w, mags)


def rotate_right(A, theta):
    """Multiply every row on the right by ``((cos t, sin t), (-sin t, cos t))``.

    Each row is turned counterclockwise by ``theta``; its square by
    ``2 * theta``.
    """
    c, s = math.cos(theta), math.sin(theta)
    rows = A.rows @ np.array([[c, s], [-s, c]])
    return _freeze(rows, orthonormality_residual(rows))


def _gram_schmidt2(cols):
    # classical Gram-Schmidt applied twice; returns None if rank-deficient
    q = np.empty_like(cols)
    norm0 = np.linalg.norm(cols[:, 0])
    if norm0 <= RANK_EPS:
        return None
    q[:, 0] = cols[:, 0] / norm0
    for _ in range(2):
        q[:, 0] /= np.linalg.norm(q[:, 0])
    v = cols[:, 1].copy()
    norm1 = np.linalg.norm(v)
    for _ in range(2):
        v -= (q[:, 0] @ v) * q[:, 0]
    nv = np.linalg.norm(v)
    if norm1 == 0.0 or nv <= RANK_EPS * norm1:
        return None
    q[:, 1] = v / nv
    return q


def reorthonormalize(rows):
    """Gram-Schmidt (twice) on the two columns of ``rows``.

    Raises
    ------
    RankDeficiencyError
        If the columns are linearly dependent within ``1e-12``.
    """
    arr = _as_rows(rows)
    if arr.shape[0] < 3:
        raise DimensionError(f"need n >= 3 rows, got {arr.shape[0]}")
    q = _gram_schmidt2(arr)
    if q is None:
        raise RankDeficiencyError("columns are linearly dependent")
    return _freeze(q, orthonormality_residual(q))


def sample_haar(n, seed):
    """Haar-distributed point of the Stiefel manifold ``V_2(R^n)``.

    Two independent standard Gaussian columns are orthonormalized, which is
    the Q factor of a Gaussian matrix with positive-diagonal R.  Output is a
    deterministic function of ``(n, seed)``.
    """
    if n < 3:
        raise DimensionError(f"need n >= 3 rows, got {n}")
    rng = np.random.default_rng(seed)
    while True:
        g = rng.standard_normal((n, 2))
        q = _gram_schmidt2(g)
        if q is not None:
            return _freeze(q, orthonormality_residual(q))
