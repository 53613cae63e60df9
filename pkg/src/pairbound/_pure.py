"""Pure-Python/numpy versions of the compiled kernels in ``_kernels.pyx``.

Used when the extension is not built, or when ``PAIRBOUND_PURE_PYTHON=1``.
"""

import math

import numpy as np


def _pair_indices(n):
    return np.triu_indices(n, k=1)


def _first_within(values, target, tie, upper):
    # first pair in row-major (i < j) order within `tie` of the extremum
    iu, ju = _pair_indices(len(values))
    vals = values[iu, ju]
    mask = vals >= target - tie if upper else vals <= target + tie
    k = int(np.argmax(mask))
    return int(iu[k]), int(ju[k]), float(vals[k])


def sigma2sq_matrix(rows):
    a1 = rows[:, 0][:, None]
    a2 = rows[:, 1][:, None]
    b1 = rows[:, 0][None, :]
    b2 = rows[:, 1][None, :]
    g11 = a1 * a1 + a2 * a2
    g22 = b1 * b1 + b2 * b2
    g12 = a1 * b1 + a2 * b2
    det = a1 * b2 - a2 * b1
    h = 0.5 * (g11 - g22)
    lam1 = 0.5 * (g11 + g22) + np.sqrt(h * h + g12 * g12)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(lam1 > 0.0, det * det / lam1, 0.0)
    return out


def best_pair_sigma2sq(rows, tie):
    vals = sigma2sq_matrix(np.asarray(rows, dtype=float))
    n = vals.shape[0]
    best = float(vals[_pair_indices(n)].max())
    return _first_within(vals, best, tie, upper=True)


def min_pair_condition(w, z, shift, tie):
    w = np.asarray(w, dtype=float)
    z = np.asarray(z, dtype=float)
    vals = w @ w.T - np.outer(z, z) + shift
    best = float(vals[_pair_indices(len(z))].min())
    return _first_within(vals, best, tie, upper=False)


def max_polygon_defect(v, tie):
    v = np.asarray(v, dtype=float)
    mags = np.hypot(v[:, 0], v[:, 1])
    s = v[:, None, :] + v[None, :, :]
    vals = mags[:, None] + mags[None, :] - np.hypot(s[..., 0], s[..., 1])
    best = float(vals[_pair_indices(len(v))].max())
    return _first_within(vals, best, tie, upper=True)


def _rotate(a, p, q, c, s, rows_too):
    x = a[:, p].copy()
    y = a[:, q].copy()
    a[:, p] = c * x - s * y
    a[:, q] = s * x + c * y
    if rows_too:
        x = a[p, :].copy()
        y = a[q, :].copy()
        a[p, :] = c * x - s * y
        a[q, :] = s * x + c * y


def jacobi_eigh(s_in, want_vectors, rel_tol, max_sweeps):
    a = np.array(s_in, dtype=float, order="C", copy=True)
    n = a.shape[0]
    v = np.eye(n) if want_vectors else None
    fro = float(np.sqrt(np.sum(a * a)))
    iu = np.triu_indices(n, k=1)
    sweep = 0
    converged = False
    while True:
        off = math.sqrt(2.0 * float(np.sum(a[iu] ** 2)))
        if off <= rel_tol * fro:
            converged = True
            break
        if sweep >= max_sweeps:
            break
        sweep += 1
        for p in range(n):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app, aqq = abs(a[p, p]), abs(a[q, q])
                if sweep > 4 and app + 100.0 * abs(apq) == app and aqq + 100.0 * abs(apq) == aqq:
                    a[p, q] = a[q, p] = 0.0
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                _rotate(a, p, q, c, s, True)
                a[p, q] = a[q, p] = 0.0
                if want_vectors:
                    _rotate(v, p, q, c, s, False)
    return np.diag(a).copy(), v, sweep, converged, off
