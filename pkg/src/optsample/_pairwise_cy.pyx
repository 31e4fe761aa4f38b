# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled pairwise kernels: squared distances and sinc products.

Hot path of every objective evaluation. Kept to plain loops over
C-contiguous float64 buffers; the transcendental postprocessing for the
gaussian / exponential families (exp, sqrt) stays in numpy so both
backends share the same vectorized libm.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport sin

cnp.import_array()

cdef double PI = 3.14159265358979323846264338327950288
cdef double SINC_SERIES_CUTOFF = 1e-6


def sqdist(const double[:, ::1] a, const double[:, ::1] b):
    """Matrix of squared euclidean distances between rows of a and b."""
    cdef Py_ssize_t m = a.shape[0], q = b.shape[0], d = a.shape[1]
    out_arr = np.empty((m, q), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, j, k
    cdef double s, t
    for i in range(m):
        for j in range(q):
            s = 0.0
            for k in range(d):
                t = a[i, k] - b[j, k]
                s += t * t
            out[i, j] = s
    return out_arr


def sinc_gram(const double[:, ::1] a, const double[:, ::1] b):
    """Matrix of per-coordinate sinc products between rows of a and b.

    Each factor is sin(pi t)/(pi t) with the series 1 - (pi t)^2/6
    substituted for |pi t| below the cutoff (removable singularity).
    """
    cdef Py_ssize_t m = a.shape[0], q = b.shape[0], d = a.shape[1]
    out_arr = np.empty((m, q), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, j, k
    cdef double p, u
    for i in range(m):
        for j in range(q):
            p = 1.0
            for k in range(d):
                u = PI * (a[i, k] - b[j, k])
                if u < SINC_SERIES_CUTOFF and u > -SINC_SERIES_CUTOFF:
                    p *= 1.0 - u * u / 6.0
                else:
                    p *= sin(u) / u
            out[i, j] = p
    return out_arr
