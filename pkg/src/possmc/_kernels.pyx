# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled max-min kernels. Mirrors ``possmc._fallback`` exactly."""

import numpy as np


def compose(const double[:, ::1] a, const double[:, ::1] b):
    cdef Py_ssize_t n = a.shape[0], inner = a.shape[1], m = b.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double aik, v, w
    cdef double *orow
    cdef const double *brow
    out = np.zeros((n, m), dtype=np.float64)
    cdef double[:, ::1] o = out
    if n == 0 or m == 0:
        return out
    for i in range(n):
        orow = &o[i, 0]
        for k in range(inner):
            aik = a[i, k]
            if aik == 0.0:
                continue
            brow = &b[k, 0]
            # branch-free so the compiler can emit packed min/max
            for j in range(m):
                v = brow[j]
                v = aik if v > aik else v
                w = orow[j]
                orow[j] = v if v > w else w
    return out


def apply(const double[:, ::1] a, const double[::1] x):
    cdef Py_ssize_t n = a.shape[0], m = a.shape[1]
    cdef Py_ssize_t i, k
    cdef double v, best
    out = np.zeros(n, dtype=np.float64)
    cdef double[::1] o = out
    for i in range(n):
        best = 0.0
        for k in range(m):
            v = a[i, k]
            if x[k] < v:
                v = x[k]
            if v > best:
                best = v
        o[i] = best
    return out


def closure(const double[:, ::1] p):
    cdef Py_ssize_t n = p.shape[0]
    cdef Py_ssize_t i, j, covered = 1
    cdef bint changed
    acc = np.array(p, dtype=np.float64, copy=True)
    cdef double[:, ::1] c = acc
    cdef double[:, ::1] sq
    while covered < n:
        sq = compose(acc, acc)
        changed = False
        for i in range(n):
            for j in range(n):
                if sq[i, j] > c[i, j]:
                    c[i, j] = sq[i, j]
                    changed = True
        covered *= 2
        if not changed:
            break
    return acc


cdef void _step(const double[:, ::1] a, const double[::1] b,
                const double[::1] x, double[::1] out) noexcept nogil:
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, k
    cdef double v, best
    for i in range(n):
        best = b[i]
        for k in range(n):
            v = a[i, k]
            if x[k] < v:
                v = x[k]
            if v > best:
                best = v
        out[i] = best


def iterate(const double[:, ::1] a, const double[::1] b, Py_ssize_t steps):
    cdef Py_ssize_t n = a.shape[0], t
    x = np.zeros(n, dtype=np.float64)
    y = np.zeros(n, dtype=np.float64)
    cdef double[::1] xv = x, yv = y
    for t in range(steps):
        _step(a, b, xv, yv)
        x, y = y, x
        xv, yv = yv, xv
    return x


def least_fixed_point(const double[:, ::1] a, const double[::1] b):
    cdef Py_ssize_t n = a.shape[0], count = 0, i
    cdef bint same
    x = np.zeros(n, dtype=np.float64)
    y = np.zeros(n, dtype=np.float64)
    cdef double[::1] xv = x, yv = y
    while True:
        _step(a, b, xv, yv)
        same = True
        for i in range(n):
            if yv[i] != xv[i]:
                same = False
                break
        if same:
            return x, count
        count += 1
        if count > n:
            raise AssertionError("max-min iteration did not stabilise within dim steps")
        x, y = y, x
        xv, yv = yv, xv
