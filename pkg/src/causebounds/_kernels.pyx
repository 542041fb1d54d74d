# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops for the Monte-Carlo and quadrature oracles.

Signatures and results match ``causebounds._fallback`` exactly, except for
floating-point summation order in the reductions.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


cdef inline double _improvement(double d, double p, double q, bint upper) noexcept nogil:
    cdef double base, best, r
    if upper:
        r = 1.0 - q
        base = p if p < r else r
        best = base
        if d < best:
            best = d
        if p + r - d < best:
            best = p + r - d
        return base - best
    base = p - q if p - q > 0.0 else 0.0
    best = base
    if d - q > best:
        best = d - q
    if p - d > best:
        best = p - d
    return best - base


def improvement_samples(const double[::1] u, double lo, double hi,
                        double p, double q, bint upper):
    cdef Py_ssize_t i, n = u.shape[0]
    cdef double width = hi - lo
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] view = out
    with nogil:
        for i in range(n):
            view[i] = _improvement(lo + width * u[i], p, q, upper)
    return out


def improvement_moments(const double[::1] u, double lo, double hi,
                        double p, double q, bint upper):
    cdef Py_ssize_t i, n = u.shape[0]
    cdef double width = hi - lo
    cdef double v, s = 0.0, s2 = 0.0
    with nogil:
        for i in range(n):
            v = _improvement(lo + width * u[i], p, q, upper)
            s += v
            s2 += v * v
    return s, s2


def midpoint_mean(double lo, double hi, double p, double q, bint upper,
                  Py_ssize_t panels):
    cdef Py_ssize_t k
    cdef double h, s = 0.0
    if hi <= lo:
        return _improvement(lo, p, q, upper)
    h = (hi - lo) / panels
    with nogil:
        for k in range(panels):
            s += _improvement(lo + (k + 0.5) * h, p, q, upper)
    return s / panels
