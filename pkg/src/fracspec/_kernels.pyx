# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops in ``_kernels_py``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, M_PI

cnp.import_array()


def phase_matrix(u, v, long long modulus, int sign):
    cdef const long long[:, ::1] U = np.ascontiguousarray(u, dtype=np.int64)
    cdef const long long[:, ::1] V = np.ascontiguousarray(v, dtype=np.int64)
    cdef Py_ssize_t m = U.shape[0], k = V.shape[0], d = U.shape[1]
    out = np.empty((m, k), dtype=np.complex128)
    cdef double complex[:, ::1] O = out
    cdef Py_ssize_t i, j, c
    cdef long long s
    cdef double theta
    cdef double scale = sign * 2.0 * M_PI / <double>modulus
    with nogil:
        for i in range(m):
            for j in range(k):
                s = 0
                for c in range(d):
                    s = s + U[i, c] * V[j, c]
                s = s % modulus
                if s < 0:
                    s = s + modulus
                theta = scale * <double>s
                O[i, j] = cos(theta) + 1j * sin(theta)
    return out


def mask_product(x, tinv, digits, int nfactors):
    cdef const double[:, ::1] X = np.ascontiguousarray(x, dtype=np.float64)
    cdef const double[:, ::1] T = np.ascontiguousarray(tinv, dtype=np.float64)
    cdef const double[:, ::1] D = np.ascontiguousarray(digits, dtype=np.float64)
    cdef Py_ssize_t m = X.shape[0], d = X.shape[1], nd = D.shape[0]
    out = np.empty(m, dtype=np.complex128)
    cdef double complex[::1] O = out
    cdef double[::1] y = np.empty(d, dtype=np.float64)
    cdef double[::1] z = np.empty(d, dtype=np.float64)
    cdef Py_ssize_t i, j, a, c, b
    cdef double re, im, theta, pr, pi_, tmp
    cdef double inv_n = 1.0 / <double>nd
    with nogil:
        for i in range(m):
            for c in range(d):
                y[c] = X[i, c]
            pr = 1.0
            pi_ = 0.0
            for j in range(nfactors):
                for a in range(d):
                    tmp = 0.0
                    for c in range(d):
                        tmp = tmp + T[a, c] * y[c]
                    z[a] = tmp
                for c in range(d):
                    y[c] = z[c]
                re = 0.0
                im = 0.0
                for b in range(nd):
                    theta = 0.0
                    for c in range(d):
                        theta = theta + D[b, c] * y[c]
                    theta = 2.0 * M_PI * theta
                    re = re + cos(theta)
                    im = im + sin(theta)
                re = re * inv_n
                im = im * inv_n
                tmp = pr * re - pi_ * im
                pi_ = pr * im + pi_ * re
                pr = tmp
            O[i] = pr + 1j * pi_
    return out
