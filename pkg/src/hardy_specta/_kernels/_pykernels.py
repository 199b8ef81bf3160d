"""Pure numpy implementations of the truncated power-series kernels.

Every function here has a drop-in twin in ``_ckernels.pyx``; the two are
checked against each other in the test suite.
"""

import numpy as np


def series_powers(phi, n):
    """Return the ``n x n`` matrix whose column ``k`` holds the first ``n``
    Taylor coefficients of ``phi**k``."""
    phi = np.ascontiguousarray(phi[:n], dtype=np.complex128)
    out = np.zeros((n, n), dtype=np.complex128)
    out[0, 0] = 1.0
    col = out[:, 0].copy()
    for k in range(1, n):
        col = np.convolve(col, phi)[:n]
        out[:, k] = col
    return out


def compose_head(f, phi, k):
    """First ``k`` Taylor coefficients of ``sum_n f[n] * phi**n`` (Horner)."""
    f = np.asarray(f, dtype=np.complex128)
    phi = np.ascontiguousarray(phi[:k], dtype=np.complex128)
    acc = np.zeros(k, dtype=np.complex128)
    for fn in f[::-1]:
        acc = np.convolve(acc, phi)[:k]
        acc[0] += fn
    return acc


def cayley_power_coeffs(lam, n):
    """Taylor coefficients of ``((1+z)/(1-z))**lam`` (principal branch).

    Uses ``(1 - z^2) w' = 2 lam w``, i.e.
    ``(m+1) c[m+1] = 2 lam c[m] + (m-1) c[m-1]``.
    """
    lam = complex(lam)
    c = np.zeros(n, dtype=np.complex128)
    if n == 0:
        return c
    c[0] = 1.0
    if n > 1:
        c[1] = 2.0 * lam
    for m in range(1, n - 1):
        c[m + 1] = (2.0 * lam * c[m] + (m - 1) * c[m - 1]) / (m + 1)
    return c


def binomial_coeffs(s, n):
    """Taylor coefficients of ``(1-z)**s``: ``c[m+1] = c[m] (m - s)/(m + 1)``."""
    s = complex(s)
    c = np.zeros(n, dtype=np.complex128)
    if n == 0:
        return c
    c[0] = 1.0
    for m in range(n - 1):
        c[m + 1] = c[m] * (m - s) / (m + 1)
    return c
