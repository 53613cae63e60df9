"""Symmetric eigenproblems and the spectral checks on ``G`` and ``M``.

For row squares ``w_i`` with ``z_i = |w_i| - 2/n``::

    G = W W^T - z z^T          M = G + (2 / n^2) * ones((n, n))

``G`` annihilates the all-ones vector, has trace ``4/n`` and at most two
positive eigenvalues; ``M`` has the all-ones vector as an eigenvector with
eigenvalue ``2/n``.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from . import _backend
from .errors import ConvergenceError, NegativityError

__all__ = [
    "EPS_SPEC",
    "SUPPORT_TOL",
    "SymMatrix",
    "SymmetricSpectrum",
    "z_vector",
    "build_G",
    "build_M",
    "eigen",
    "support_components",
    "restrict_to_ones_complement",
]

EPS_SPEC = 1e-9
SUPPORT_TOL = 1e-8
JACOBI_TOL = 1e-13
MAX_SWEEPS = 100


@dataclass(frozen=True)
class SymMatrix:
    """Real symmetric matrix; the lower triangle mirrors the upper one."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        upper = np.triu(a)
        a = upper + np.triu(a, 1).T
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def n(self):
        return self.entries.shape[0]


@dataclass(frozen=True)
class SymmetricSpectrum:
    eigenvalues: np.ndarray
    positive_count: int
    eigenvectors: Optional[np.ndarray] = None
    sweeps: int = 0


def z_vector(w):
    return w.magnitudes - 2.0 / w.n


def build_G(w):
    z = z_vector(w)
    return SymMatrix(w.w @ w.w.T - np.outer(z, z))


def build_M(w):
    n = w.n
    return SymMatrix(build_G(w).entries + 2.0 / n**2)


def _inertia(values, eps=EPS_SPEC):
    scale = max(1.0, float(np.max(np.abs(values)))) if len(values) else 1.0
    return int(np.sum(values > eps * scale))


def eigen(S, vectors=False):
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps stop once the off-diagonal Frobenius norm is at most
    ``1e-13 * ||S||_F``.

    Parameters
    ----------
    S : SymMatrix
    vectors : bool
        Also accumulate the orthogonal eigenvector matrix.

    Returns
    -------
    SymmetricSpectrum
        Eigenvalues sorted in descending order; eigenvector columns follow
        the same order.

    Raises
    ------
    ConvergenceError
        If 100 sweeps do not reach the threshold.
    """
    if not isinstance(S, SymMatrix):
        S = SymMatrix(S)
    diag, vecs, sweeps, converged, off = _backend.jacobi_eigh(
        S.entries, vectors, JACOBI_TOL, MAX_SWEEPS
    )
    if not converged:
        raise ConvergenceError(
            f"Jacobi did not converge in {MAX_SWEEPS} sweeps (off-norm {off:.3e})"
        )
    order = np.argsort(-diag, kind="stable")
    values = diag[order]
    if vecs is not None:
        vecs = vecs[:, order]
    return SymmetricSpectrum(values, _inertia(values), vecs, sweeps)


def support_components(S, tol=SUPPORT_TOL):
    """Connected components of the graph with an edge where ``S_ij > tol``.

    Components are lists of 0-based indices, each sorted, ordered by their
    smallest member.

    Raises
    ------
    NegativityError
        If some entry is below ``-tol``.
    """
    a = S.entries if isinstance(S, SymMatrix) else np.asarray(S, dtype=float)
    lo = float(a.min())
    if lo < -tol:
        raise NegativityError(f"entry {lo:.3e} below -{tol:.1e}")
    adj = a > tol
    np.fill_diagonal(adj, False)
    _, labels = connected_components(csr_matrix(adj), directed=False)
    groups = {}
    for idx, lab in enumerate(labels):
        groups.setdefault(lab, []).append(idx)
    return sorted(groups.values(), key=lambda g: g[0])


def _ones_complement_basis(n):
    # orthonormal basis of the hyperplane orthogonal to the all-ones vector
    q, _ = np.linalg.qr(np.column_stack((np.ones(n), np.eye(n)[:, : n - 1])))
    return q[:, 1:]


def restrict_to_ones_complement(S):
    """Compress ``S`` onto the complement of the all-ones vector.

    Meaningful when the all-ones vector is an eigenvector of ``S``, as for
    ``G`` and ``M``; the result is ``(n-1) x (n-1)``.
    """
    Q = _ones_complement_basis(S.n)
    return SymMatrix(Q.T @ S.entries @ Q)
