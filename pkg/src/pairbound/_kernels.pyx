# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: cyclic Jacobi sweeps and O(n^2) pair scans.

Signatures and results mirror :mod:`pairbound._pure` exactly.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs

cnp.import_array()


cdef inline double _sigma2sq(double a1, double a2, double b1, double b2) nogil:
    cdef double g11 = a1 * a1 + a2 * a2
    cdef double g22 = b1 * b1 + b2 * b2
    cdef double g12 = a1 * b1 + a2 * b2
    cdef double det = a1 * b2 - a2 * b1
    cdef double h = 0.5 * (g11 - g22)
    cdef double lam1 = 0.5 * (g11 + g22) + sqrt(h * h + g12 * g12)
    if lam1 <= 0.0:
        return 0.0
    return det * det / lam1


def best_pair_sigma2sq(const double[:, ::1] rows, double tie):
    cdef Py_ssize_t n = rows.shape[0], i, j
    cdef double v, best = -1.0
    for i in range(n):
        for j in range(i + 1, n):
            v = _sigma2sq(rows[i, 0], rows[i, 1], rows[j, 0], rows[j, 1])
            if v > best:
                best = v
    for i in range(n):
        for j in range(i + 1, n):
            v = _sigma2sq(rows[i, 0], rows[i, 1], rows[j, 0], rows[j, 1])
            if v >= best - tie:
                return i, j, v
    return 0, 1, best


def min_pair_condition(const double[:, ::1] w, const double[::1] z, double shift, double tie):
    cdef Py_ssize_t n = w.shape[0], i, j
    cdef double v, best = 1e300
    for i in range(n):
        for j in range(i + 1, n):
            v = w[i, 0] * w[j, 0] + w[i, 1] * w[j, 1] - z[i] * z[j] + shift
            if v < best:
                best = v
    for i in range(n):
        for j in range(i + 1, n):
            v = w[i, 0] * w[j, 0] + w[i, 1] * w[j, 1] - z[i] * z[j] + shift
            if v <= best + tie:
                return i, j, v
    return 0, 1, best


cdef inline double _defect(const double[:, ::1] v, Py_ssize_t i, Py_ssize_t j) nogil:
    cdef double sx = v[i, 0] + v[j, 0], sy = v[i, 1] + v[j, 1]
    return (sqrt(v[i, 0] * v[i, 0] + v[i, 1] * v[i, 1])
            + sqrt(v[j, 0] * v[j, 0] + v[j, 1] * v[j, 1])
            - sqrt(sx * sx + sy * sy))


def max_polygon_defect(const double[:, ::1] v, double tie):
    cdef Py_ssize_t n = v.shape[0], i, j
    cdef double d, best = -1e300
    for i in range(n):
        for j in range(i + 1, n):
            d = _defect(v, i, j)
            if d > best:
                best = d
    for i in range(n):
        for j in range(i + 1, n):
            d = _defect(v, i, j)
            if d >= best - tie:
                return i, j, d
    return 0, 1, best


cdef inline void _rotate(double[:, ::1] a, Py_ssize_t p, Py_ssize_t q,
                         double c, double s, bint rows_too) nogil:
    cdef Py_ssize_t k, n = a.shape[0]
    cdef double x, y
    for k in range(n):
        x = a[k, p]
        y = a[k, q]
        a[k, p] = c * x - s * y
        a[k, q] = s * x + c * y
    if rows_too:
        for k in range(n):
            x = a[p, k]
            y = a[q, k]
            a[p, k] = c * x - s * y
            a[q, k] = s * x + c * y


def jacobi_eigh(cnp.ndarray[cnp.float64_t, ndim=2] s_in, bint want_vectors,
                double rel_tol, int max_sweeps):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] arr = np.array(s_in, dtype=np.float64, order="C", copy=True)
    cdef double[:, ::1] a = arr
    cdef Py_ssize_t n = a.shape[0], p, q
    cdef cnp.ndarray[cnp.float64_t, ndim=2] varr = np.eye(n) if want_vectors else np.zeros((1, 1))
    cdef double[:, ::1] v = varr
    cdef double fro = 0.0, off, apq, theta, t, c, s
    cdef int sweep = 0
    cdef bint converged = False
    for p in range(n):
        for q in range(n):
            fro += a[p, q] * a[p, q]
    fro = sqrt(fro)
    with nogil:
        while True:
            off = 0.0
            for p in range(n):
                for q in range(p + 1, n):
                    off += a[p, q] * a[p, q]
            off = sqrt(2.0 * off)
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
                    if sweep > 4 and (fabs(a[p, p]) + 100.0 * fabs(apq) == fabs(a[p, p])
                                      and fabs(a[q, q]) + 100.0 * fabs(apq) == fabs(a[q, q])):
                        a[p, q] = 0.0
                        a[q, p] = 0.0
                        continue
                    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                    if fabs(theta) > 1e150:
                        t = 0.5 / theta
                    else:
                        t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                        if theta < 0.0:
                            t = -t
                    c = 1.0 / sqrt(t * t + 1.0)
                    s = t * c
                    _rotate(a, p, q, c, s, True)
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    if want_vectors:
                        _rotate(v, p, q, c, s, False)
    return np.diag(arr).copy(), (varr if want_vectors else None), sweep, converged, off
