"""Choosing a 2x2 submatrix whose inverse has spectral norm at most sqrt(n).

Two routes are provided.  :func:`brute_force_best` scans every pair of rows.
:func:`certify_pair` follows the inductive argument instead:

* ``n = 3`` is settled by the scan.
* If some row has ``|a_k|^2 <= 1/n``, rotate it onto ``(b, 0)``, drop it,
  stretch the first column of the rest by ``t = 1/sqrt(1 - b^2)`` so the
  columns become orthonormal again, and recurse.  A pair good for the
  stretched matrix loses at most a factor ``1/t`` in ``sigma_2``, and
  ``(1 - b^2) / (n - 1) >= 1/n``.
* Otherwise every row is long, and some pair has
  ``M_ij = (w_i, w_j) - z_i z_j + 2/n^2 <= 0``; that pair has
  ``sigma_2^2 >= 1/n``.
"""

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _backend
from .errors import InvariantViolation
from .stiefel import EPS_ORTH, squares_of, validate
from .vec2kernels import sigma2_of_pair

__all__ = [
    "EPS_CERT",
    "EPS_M",
    "EPS_B",
    "ProofPath",
    "PairCertificate",
    "brute_force_best",
    "certify_pair",
    "pair_condition_lhs",
    "gram_lambda2",
]

EPS_CERT = 1e-10
EPS_M = 1e-9
EPS_B = 1e-13
CHAIN_TOL = 1e-12


class ProofPath(enum.Enum):
    BRUTE_BASE = "brute_base"
    CASE_A = "case_a"
    CASE_B = "case_b"


@dataclass(frozen=True)
class PairCertificate:
    """A row pair ``i < j`` (0-based) of the original matrix and its ``sigma_2``.

    ``path`` is the branch taken at the top level; ``depth`` counts rows
    eliminated by the small-row branch and ``terminal`` says how the
    recursion ended.  ``case_b_value`` is the ``M_ij`` of the selected pair
    when the recursion ended in the long-rows branch.
    """

    i: int
    j: int
    sigma2: float
    bound: float
    path: ProofPath
    depth: int = 0
    terminal: ProofPath = ProofPath.BRUTE_BASE
    case_b_value: Optional[float] = None

    @property
    def inverse_norm(self):
        return math.inf if self.sigma2 == 0.0 else 1.0 / self.sigma2

    @property
    def margin(self):
        return self.sigma2 - self.bound

    def to_dict(self, one_based=True):
        off = 1 if one_based else 0
        return {
            "i": self.i + off,
            "j": self.j + off,
            "sigma2": self.sigma2,
            "inverse_norm": self.inverse_norm,
            "bound": self.bound,
            "path": self.path.value,
            "depth": self.depth,
            "terminal": self.terminal.value,
            "case_b_value": self.case_b_value,
        }


def _check_pair(n, i, j):
    if i == j or not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"need two distinct row indices in [0, {n}), got ({i}, {j})")


def brute_force_best(A):
    """Scan all ``n(n-1)/2`` row pairs and return the one maximizing ``sigma_2``.

    Ties (within ``1e-14`` in ``sigma_2^2``) go to the lexicographically
    smallest pair.
    """
    rows = A.rows
    i, j, _ = _backend.best_pair_sigma2sq(rows)
    s2 = sigma2_of_pair(rows[i], rows[j])
    return PairCertificate(i, j, s2, 1.0 / math.sqrt(A.n), ProofPath.BRUTE_BASE)


def pair_condition_lhs(w, i, j):
    """``M_ij = (w_i, w_j) - z_i z_j + 2/n^2`` with ``z_i = |w_i| - 2/n``."""
    n = w.n
    _check_pair(n, i, j)
    zi = w.magnitudes[i] - 2.0 / n
    zj = w.magnitudes[j] - 2.0 / n
    return float(w.w[i] @ w.w[j] - zi * zj + 2.0 / n**2)


def gram_lambda2(A, i, j):
    """Smaller eigenvalue of the Gram matrix of rows ``i`` and ``j``.

    Root of ``(|a_i|^2 - l)(|a_j|^2 - l) - (a_i, a_j)^2``, taken as
    ``det / lambda_1`` to avoid cancellation.
    """
    rows = A.rows if hasattr(A, "rows") else np.asarray(A, dtype=float)
    _check_pair(rows.shape[0], i, j)
    a, b = rows[i], rows[j]
    g11, g22, g12 = float(a @ a), float(b @ b), float(a @ b)
    lam1 = 0.5 * (g11 + g22) + math.hypot(0.5 * (g11 - g22), g12)
    if lam1 <= 0.0:
        return 0.0
    det = a[0] * b[1] - a[1] * b[0]
    return float(det * det / lam1)


def certify_pair(A):
    """Certify a pair with ``sigma_2 >= 1/sqrt(n)`` by the inductive argument.

    Raises
    ------
    InvariantViolation
        If the long-rows branch finds no pair with ``M_ij <= 1e-9``, the
        bound chain of the small-row branch breaks, or the final
        ``sigma_2`` misses ``1/sqrt(n)`` by more than ``1e-10``.  None of
        these can happen for exactly orthonormal input.
    """
    cert = _certify(A.rows, 0)
    if cert.sigma2 < cert.bound - EPS_CERT:
        raise InvariantViolation(
            f"certified sigma2 {cert.sigma2!r} below bound {cert.bound!r}"
        )
    return cert


def _certify(rows, depth):
    n = rows.shape[0]
    bound = 1.0 / math.sqrt(n)
    if n == 3:
        i, j, _ = _backend.best_pair_sigma2sq(rows)
        return PairCertificate(
            i, j, sigma2_of_pair(rows[i], rows[j]), bound, ProofPath.BRUTE_BASE
        )

    norms2 = np.einsum("ij,ij->i", rows, rows)
    k = int(np.argmin(norms2))
    if norms2[k] <= 1.0 / n:
        return _case_a(rows, k, depth)

    w = squares_of(rows)
    z = np.hypot(w[:, 0], w[:, 1]) - 2.0 / n
    i, j, m_ij = _backend.min_pair_condition(w, z, 2.0 / n**2)
    if m_ij > EPS_M:
        raise InvariantViolation(
            f"no pair with M_ij <= 0 among {n} long rows (min {m_ij:.3e}); input is not orthonormal"
        )
    return PairCertificate(
        i, j, sigma2_of_pair(rows[i], rows[j]), bound,
        ProofPath.CASE_B, terminal=ProofPath.CASE_B, case_b_value=float(m_ij),
    )


def _case_a(rows, k, depth):
    n = rows.shape[0]
    b = math.hypot(rows[k, 0], rows[k, 1])
    keep = np.delete(np.arange(n), k)
    if b <= EPS_B:
        sub = rows[keep]
        b = 0.0
    else:
        # Givens rotation taking row k to (b, 0)
        c, s = rows[k, 0] / b, -rows[k, 1] / b
        rotated = rows[keep] @ np.array([[c, s], [-s, c]])
        t = 1.0 / math.sqrt(1.0 - b * b)
        sub = rotated * np.array([t, 1.0])
    sub_matrix = validate(sub, tol=EPS_ORTH * 10.0 ** (depth + 1))
    inner = _certify(sub_matrix.rows, depth + 1)

    i, j = int(keep[inner.i]), int(keep[inner.j])
    s2 = sigma2_of_pair(rows[i], rows[j])
    if s2 * s2 < (1.0 - b * b) * inner.sigma2**2 - CHAIN_TOL:
        raise InvariantViolation(
            f"bound chain broken at depth {depth}: {s2**2!r} < (1 - b^2) * {inner.sigma2**2!r}"
        )
    return PairCertificate(
        i, j, s2, 1.0 / math.sqrt(n), ProofPath.CASE_A, inner.depth + 1,
        inner.terminal, inner.case_b_value,
    )
