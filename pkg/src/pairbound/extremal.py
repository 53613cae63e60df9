"""The equality family and its planar-polygon formulation.

A matrix attains ``max sigma_2 = 1/sqrt(n)`` exactly when its row squares
take only three distinct values ``x, y, z`` with multiplicities
``p + q + r = n`` and ``|x| = 1/(2n) + 1/(2p)`` (same for ``q``, ``r``).
The totals ``p x``, ``q y``, ``r z`` are the sides of a triangle of
perimeter 2, which is how :func:`construct_extremal` builds them.
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from . import _backend
from .errors import ClosureError, CompositionError, DegeneratePerimeterError, DimensionError
from .stiefel import row_squares, validate
from .vec2kernels import Vec2, sqrt_principal

__all__ = [
    "CLUSTER_TOL",
    "CLOSURE_TOL",
    "ClusterStructure",
    "PolygonInstance",
    "cluster_magnitude",
    "triangle_sides",
    "construct_extremal",
    "detect_equality",
    "polygon_defect",
    "polygon_equality_classify",
]

CLUSTER_TOL = 1e-8
CLOSURE_TOL = 1e-9
PERIMETER_EPS = 1e-14
DISTINCT_TOL = 1e-8


def cluster_magnitude(n, size):
    """Common magnitude of the row squares in a cluster of ``size`` rows."""
    return 1.0 / (2 * n) + 1.0 / (2 * size)


@dataclass(frozen=True)
class ClusterStructure:
    """Three-cluster description of an extremal matrix or polygon.

    ``sizes`` are ``(p, q, r)`` and ``representatives`` the matching squares
    ``(x, y, z)``; ``assignment[k]`` is the cluster label (0, 1 or 2) of
    row ``k``.
    """

    sizes: Tuple[int, int, int]
    representatives: Tuple[Vec2, Vec2, Vec2]
    assignment: Tuple[int, ...]

    @property
    def n(self):
        return sum(self.sizes)

    @property
    def p(self):
        return self.sizes[0]

    @property
    def q(self):
        return self.sizes[1]

    @property
    def r(self):
        return self.sizes[2]

    def to_dict(self):
        return {
            "sizes": list(self.sizes),
            "representatives": [list(v) for v in self.representatives],
            "magnitudes": [math.hypot(*v) for v in self.representatives],
            "assignment": [label + 1 for label in self.assignment],
        }


@dataclass(frozen=True)
class PolygonInstance:
    """Closed planar polygon given by its edge vectors."""

    vectors: np.ndarray
    perimeter: float

    @classmethod
    def from_vectors(cls, vectors, closure_tol=CLOSURE_TOL):
        """Build from edge vectors, checking closure after scaling to perimeter 2.

        Raises
        ------
        DegeneratePerimeterError
            If the perimeter is at most ``1e-14``.
        ClosureError
            If the normalized vectors do not sum to zero within ``closure_tol``.
        """
        v = np.array(vectors, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2:
            raise DimensionError(f"expected n x 2 edge vectors, got shape {v.shape}")
        if v.shape[0] < 3:
            raise DimensionError(f"need at least 3 edges, got {v.shape[0]}")
        if not np.all(np.isfinite(v)):
            raise ValueError("edge vectors must be finite")
        perimeter = float(np.sum(np.hypot(v[:, 0], v[:, 1])))
        if perimeter <= PERIMETER_EPS:
            raise DegeneratePerimeterError(f"perimeter {perimeter:.3e} is degenerate")
        gap = float(np.hypot(*(v.sum(axis=0) * (2.0 / perimeter))))
        if gap > closure_tol:
            raise ClosureError(f"polygon does not close: residual {gap:.3e}")
        v.setflags(write=False)
        return cls(v, perimeter)

    @property
    def n(self):
        return self.vectors.shape[0]

    def normalized(self):
        return self.vectors * (2.0 / self.perimeter)


def triangle_sides(n, p, q, r, orientation=0.0):
    """Side vectors of the triangle with lengths ``k/(2n) + 1/2``, ``k = p, q, r``.

    The first side points along ``orientation``; the sides follow each
    other counterclockwise and sum to zero.
    """
    _check_composition(n, p, q, r)
    lp, lq, lr = (k / (2.0 * n) + 0.5 for k in (p, q, r))
    # interior angle between sides p and q, opposite side r
    cos_pq = (lp * lp + lq * lq - lr * lr) / (2.0 * lp * lq)
    gamma = math.acos(max(-1.0, min(1.0, cos_pq)))
    phi_q = orientation + math.pi - gamma
    sp = np.array([lp * math.cos(orientation), lp * math.sin(orientation)])
    sq = np.array([lq * math.cos(phi_q), lq * math.sin(phi_q)])
    sr = -(sp + sq)
    return sp, sq, sr


def _check_composition(n, p, q, r):
    for k in (n, p, q, r):
        if int(k) != k:
            raise CompositionError(f"sizes must be integers, got {(n, p, q, r)}")
    if min(p, q, r) < 1:
        raise CompositionError(f"cluster sizes must be positive, got {(p, q, r)}")
    if p + q + r != n:
        raise CompositionError(f"p + q + r = {p + q + r} but n = {n}")


def construct_extremal(n, p, q, r, orientation=0.0):
    """Build an extremal matrix with clusters of ``p, q, r`` rows.

    Rows are cluster-contiguous and each row is the principal square root
    of its cluster square, so any row may be negated without leaving the
    family.

    Returns
    -------
    (StiefelMatrix, ClusterStructure)

    Raises
    ------
    CompositionError
        If ``p + q + r != n`` or a part is not positive.
    """
    sides = triangle_sides(n, p, q, r, orientation)
    sizes = (int(p), int(q), int(r))
    reps = tuple(Vec2(*(s / k)) for s, k in zip(sides, sizes))
    roots = [sqrt_principal(v) for v in reps]
    rows = np.array([roots[c] for c, k in enumerate(sizes) for _ in range(k)], dtype=float)
    assignment = tuple(c for c, k in enumerate(sizes) for _ in range(k))
    return validate(rows), ClusterStructure(sizes, reps, assignment)


def _cluster(points, tol):
    # single-linkage clustering at distance tol
    diff = points[:, None, :] - points[None, :, :]
    adj = np.hypot(diff[..., 0], diff[..., 1]) <= tol
    count, labels = connected_components(csr_matrix(adj), directed=False)
    # relabel by first appearance so labels follow row order
    order = {}
    for lab in labels:
        order.setdefault(lab, len(order))
    return count, np.array([order[lab] for lab in labels])


def _classify(w, tol, mag_tol):
    n = w.shape[0]
    count, labels = _cluster(w, tol)
    if count != 3:
        return None
    sizes = tuple(int(np.sum(labels == c)) for c in range(3))
    reps = [w[labels == c].mean(axis=0) for c in range(3)]
    for rep, k in zip(reps, sizes):
        if abs(math.hypot(*rep) - cluster_magnitude(n, k)) > mag_tol:
            return None
    for a in range(3):
        for b in range(a + 1, 3):
            if math.hypot(*(reps[a] - reps[b])) <= DISTINCT_TOL:
                return None
    return ClusterStructure(
        sizes, tuple(Vec2(float(v[0]), float(v[1])) for v in reps), tuple(int(x) for x in labels)
    )


def detect_equality(A, tol=CLUSTER_TOL):
    """Return the three-cluster structure of ``A``'s row squares, or ``None``.

    Squares within ``tol`` of each other are merged (single linkage).  The
    structure is returned only for exactly three clusters whose mean
    magnitudes match ``1/(2n) + 1/(2 size)`` within ``10 * tol`` and whose
    representatives are pairwise distinct.
    """
    return _classify(row_squares(A).w, tol, 10.0 * tol)


def polygon_defect(P):
    """Largest ``|w_i| + |w_j| - |w_i + w_j|`` after scaling to perimeter 2.

    Returns
    -------
    (float, (int, int))
        The defect and the lexicographically first pair attaining it
        (0-based).
    """
    i, j, d = _backend.max_polygon_defect(P.normalized())
    return float(d), (i, j)


def polygon_equality_classify(P, tol=CLUSTER_TOL):
    """Three-cluster structure of a perimeter-normalized polygon, or ``None``."""
    return _classify(P.normalized(), tol, tol)
