# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled truncated power-series kernels (see ``_pykernels`` for the reference)."""

import numpy as np


from libc.string cimport memcpy, memset


cdef inline void _mul_trunc(const double* src, const double* ph, Py_ssize_t m, Py_ssize_t n,
                            Py_ssize_t lo, double* dst) noexcept nogil:
    # dst[:n] = (src * ph)[:n] on interleaved (re, im) pairs; src[j] = 0 for j < lo.
    # axpy order keeps the inner loop free of a carried dependency
    cdef Py_ssize_t i, j, top
    cdef double ar, ai, br, bi
    memset(dst, 0, 2 * n * sizeof(double))
    for j in range(lo, n):
        ar = src[2 * j]
        ai = src[2 * j + 1]
        if ar == 0.0 and ai == 0.0:
            continue
        top = n - j
        if top > m:
            top = m
        for i in range(top):
            br = ph[2 * i]
            bi = ph[2 * i + 1]
            dst[2 * (i + j)] += ar * br - ai * bi
            dst[2 * (i + j) + 1] += ar * bi + ai * br


def series_powers(phi, Py_ssize_t n):
    cdef const double[::1] ph = np.ascontiguousarray(phi[:n], dtype=np.complex128).view(np.float64)
    cdef Py_ssize_t m = ph.shape[0] // 2
    rows = np.zeros((n, n), dtype=np.complex128)
    cdef double[:, ::1] out = rows.view(np.float64)
    cdef Py_ssize_t k, lo = 0
    # phi(0) = 0: phi**(k-1) vanishes below index k-1
    cdef bint zero_at_origin = m > 0 and ph[0] == 0.0 and ph[1] == 0.0
    out[0, 0] = 1.0
    if n > 1 and m > 0:
        with nogil:
            # row k of ``out`` holds phi**k; transposed on return
            for k in range(1, n):
                if zero_at_origin:
                    lo = k - 1
                _mul_trunc(&out[k - 1, 0], &ph[0], m, n, lo, &out[k, 0])
    return np.ascontiguousarray(rows.T)


def compose_head(f, phi, Py_ssize_t k):
    cdef const double complex[::1] fc = np.ascontiguousarray(f, dtype=np.complex128)
    cdef const double[::1] ph = np.ascontiguousarray(phi[:k], dtype=np.complex128).view(np.float64)
    cdef Py_ssize_t m = ph.shape[0] // 2
    result = np.zeros(k, dtype=np.complex128)
    scratch = np.zeros(2 * k, dtype=np.float64)
    cdef double[::1] r = result.view(np.float64)
    cdef double[::1] t = scratch
    cdef Py_ssize_t n
    if k == 0 or m == 0:
        if k and fc.shape[0] and m == 0:
            result[0] = fc[0]
        return result
    with nogil:
        for n in range(fc.shape[0] - 1, -1, -1):
            _mul_trunc(&r[0], &ph[0], m, k, 0, &t[0])
            memcpy(&r[0], &t[0], 2 * k * sizeof(double))
            r[0] = r[0] + fc[n].real
            r[1] = r[1] + fc[n].imag
    return result


def cayley_power_coeffs(lam, Py_ssize_t n):
    cdef double complex l = complex(lam)
    result = np.zeros(n, dtype=np.complex128)
    cdef double complex[::1] c = result
    cdef Py_ssize_t m
    if n == 0:
        return result
    c[0] = 1.0
    if n > 1:
        c[1] = 2.0 * l
    for m in range(1, n - 1):
        c[m + 1] = (2.0 * l * c[m] + (m - 1) * c[m - 1]) / (m + 1)
    return result


def binomial_coeffs(s, Py_ssize_t n):
    cdef double complex sc = complex(s)
    result = np.zeros(n, dtype=np.complex128)
    cdef double complex[::1] c = result
    cdef Py_ssize_t m
    if n == 0:
        return result
    c[0] = 1.0
    for m in range(n - 1):
        c[m + 1] = c[m] * (m - sc) / (m + 1)
    return result
