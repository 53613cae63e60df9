"""The compiled kernels and the numpy fallback must agree."""

import os
import subprocess
import sys

import numpy as np
import pytest

from pairbound import _backend, _pure, construct_extremal, sample_haar
from pairbound.stiefel import squares_of as squares_of_rows

kernels = pytest.importorskip("pairbound._kernels")

TIE = _backend.TIE_TOL


@pytest.mark.parametrize("n", [3, 5, 16, 50])
def test_best_pair(n):
    for seed in range(10):
        rows = np.ascontiguousarray(sample_haar(n, seed).rows)
        a = kernels.best_pair_sigma2sq(rows, TIE)
        b = _pure.best_pair_sigma2sq(rows, TIE)
        assert a[:2] == b[:2]
        assert a[2] == pytest.approx(b[2], abs=1e-15)


def test_min_pair_condition_and_defect():
    for seed in range(20):
        n = 3 + seed
        rows = sample_haar(n, seed).rows
        w = squares_of_rows(rows)
        z = np.hypot(w[:, 0], w[:, 1]) - 2.0 / n
        a = kernels.min_pair_condition(w, z, 2.0 / n**2, TIE)
        b = _pure.min_pair_condition(w, z, 2.0 / n**2, TIE)
        assert a[:2] == b[:2]
        assert a[2] == pytest.approx(b[2], abs=1e-15)
        a = kernels.max_polygon_defect(w, TIE)
        b = _pure.max_polygon_defect(w, TIE)
        assert a[:2] == b[:2]
        assert a[2] == pytest.approx(b[2], abs=1e-15)


def test_ties_resolve_identically():
    A, _ = construct_extremal(6, 2, 2, 2)
    rows = np.ascontiguousarray(A.rows)
    assert kernels.best_pair_sigma2sq(rows, TIE)[:2] == _pure.best_pair_sigma2sq(rows, TIE)[:2] == (0, 2)


@pytest.mark.parametrize("n", [1, 2, 7, 24])
def test_jacobi(n):
    rng = np.random.default_rng(n)
    X = rng.standard_normal((n, n))
    S = X + X.T
    da, va, _, ca, _ = kernels.jacobi_eigh(S, True, 1e-13, 100)
    db, vb, _, cb, _ = _pure.jacobi_eigh(S, True, 1e-13, 100)
    assert ca and cb
    np.testing.assert_allclose(np.sort(da), np.sort(db), atol=1e-12)
    for d, v in ((da, va), (db, vb)):
        np.testing.assert_allclose(v @ np.diag(d) @ v.T, S, atol=1e-11)


def test_jacobi_reports_nonconvergence():
    rng = np.random.default_rng(0)
    X = rng.standard_normal((10, 10))
    for impl in (kernels, _pure):
        *_, converged, off = impl.jacobi_eigh(X + X.T, False, 1e-13, 1)
        assert not converged and off > 0


def test_env_var_selects_fallback():
    code = "import pairbound; print(pairbound.BACKEND)"
    env = dict(os.environ, PAIRBOUND_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "python"
    env["PAIRBOUND_PURE_PYTHON"] = "0"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "cython"
