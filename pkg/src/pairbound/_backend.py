"""Kernel backend chosen at import time.

The compiled extension is preferred; the numpy implementation is used when
it is missing or when ``PAIRBOUND_PURE_PYTHON`` is set to a non-empty value
other than ``0``.
"""

import os

import numpy as np

from . import _pure

_impl = _pure
NAME = "python"

if os.environ.get("PAIRBOUND_PURE_PYTHON", "0") in ("", "0"):
    try:
        from . import _kernels as _impl  # noqa: F811
        NAME = "cython"
    except ImportError:
        pass

# pairs whose score is within this of the extremum count as tied
TIE_TOL = 1e-14


def _c(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def best_pair_sigma2sq(rows):
    return _impl.best_pair_sigma2sq(_c(rows), TIE_TOL)


def min_pair_condition(w, z, shift):
    return _impl.min_pair_condition(_c(w), _c(z), float(shift), TIE_TOL)


def max_polygon_defect(v):
    return _impl.max_polygon_defect(_c(v), TIE_TOL)


def jacobi_eigh(s, want_vectors, rel_tol, max_sweeps):
    return _impl.jacobi_eigh(_c(s), bool(want_vectors), float(rel_tol), int(max_sweeps))
