# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same signatures and results as ``_kernels_py``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, INFINITY

cnp.import_array()


def range_quadratic(C, Qpinv, Nt, Z, double atol):
    cdef const double[:, ::1] c = np.ascontiguousarray(C, dtype=np.float64)
    cdef const double[:, ::1] q = np.ascontiguousarray(Qpinv, dtype=np.float64)
    cdef const double[:, ::1] nt = np.ascontiguousarray(Nt, dtype=np.float64)
    cdef const double[:, ::1] z = np.ascontiguousarray(np.atleast_2d(Z), dtype=np.float64)
    cdef Py_ssize_t p = z.shape[0], d = z.shape[1], k = c.shape[0], m = nt.shape[0]
    cdef Py_ssize_t i, j, l
    cdef double acc, zn, rn, v
    out = np.empty(p)
    res = np.empty(p)
    cdef double[::1] vals = out
    cdef double[::1] rs = res
    cdef double[::1] b = np.empty(k)
    for i in range(p):
        zn = 0.0
        for j in range(d):
            zn += z[i, j] * z[i, j]
        zn = sqrt(zn)
        for l in range(k):
            acc = 0.0
            for j in range(d):
                acc += c[l, j] * z[i, j]
            b[l] = acc
        rn = 0.0
        for l in range(m):
            acc = 0.0
            for j in range(k):
                acc += nt[l, j] * b[j]
            rn += acc * acc
        rn = sqrt(rn)
        rs[i] = rn
        if rn > atol * (zn if zn > 1.0 else 1.0):
            vals[i] = INFINITY
            continue
        v = 0.0
        for l in range(k):
            acc = 0.0
            for j in range(k):
                acc += q[l, j] * b[j]
            v += b[l] * acc
        vals[i] = 0.25 * v
    return out, res


def grid_sup(U, V, x, xs, center, double radius, Py_ssize_t npts):
    cdef const double[:, ::1] u = np.ascontiguousarray(U, dtype=np.float64)
    cdef const double[:, ::1] vv = np.ascontiguousarray(V, dtype=np.float64)
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef const double[::1] xsv = np.ascontiguousarray(xs, dtype=np.float64)
    cdef const double[::1] cen = np.ascontiguousarray(center, dtype=np.float64)
    cdef Py_ssize_t n = u.shape[0], k = u.shape[1]
    if k == 0:
        return 0.0, np.zeros(0)
    # the objective is a quadratic in c: lin^T c - c^T G c with G = U^T V (not symmetrized)
    cdef double[::1] lin = np.empty(k)
    cdef double[:, ::1] G = np.empty((k, k))
    cdef Py_ssize_t a, bb, r, t
    cdef double acc
    for a in range(k):
        acc = 0.0
        for r in range(n):
            acc += xv[r] * vv[r, a] + xsv[r] * u[r, a]
        lin[a] = acc
        for bb in range(k):
            acc = 0.0
            for r in range(n):
                acc += u[r, a] * vv[r, bb]
            G[a, bb] = acc
    cdef double step = 2.0 * radius / (npts - 1) if npts > 1 else 0.0
    cdef Py_ssize_t total = 1
    for a in range(k):
        total *= npts
    cdef double[::1] cc = np.empty(k)
    best_c = np.empty(k)
    cdef double[::1] bc = best_c
    cdef double best = -INFINITY, val, quad
    cdef Py_ssize_t idx, rem
    for idx in range(total):
        rem = idx
        for a in range(k - 1, -1, -1):
            cc[a] = cen[a] - radius + step * (rem % npts)
            rem //= npts
        val = 0.0
        for a in range(k):
            val += lin[a] * cc[a]
        quad = 0.0
        for a in range(k):
            for bb in range(k):
                quad += cc[a] * G[a, bb] * cc[bb]
        val -= quad
        if val > best:
            best = val
            for a in range(k):
                bc[a] = cc[a]
    return best, best_c
