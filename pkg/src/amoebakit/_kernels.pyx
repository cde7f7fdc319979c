# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: batched root finding and torus log-modulus means.

Same algorithms as amoebakit._kernels_py (Jacobi-style simultaneous root
updates with per-row freezing; term-ordered grid accumulation), so the two
backends agree to floating-point rounding.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, exp, log, sin

cnp.import_array()

BACKEND_NAME = "compiled"

DEF PI = 3.141592653589793


def dk_roots_batch(object coeffs_in, int max_iter=200, double tol=1e-12):
    """Simultaneous root iteration on a batch; see the Python twin for contract."""
    coeffs_arr = np.ascontiguousarray(coeffs_in, dtype=np.complex128)
    cdef double complex[:, ::1] coeffs = coeffs_arr
    cdef Py_ssize_t m = coeffs.shape[0]
    cdef Py_ssize_t n = coeffs.shape[1]
    cdef Py_ssize_t deg = n - 1
    roots_arr = np.empty((m, deg), dtype=np.complex128)
    conv_arr = np.zeros(m, dtype=np.uint8)
    cdef double complex[:, ::1] roots = roots_arr
    cdef unsigned char[::1] conv = conv_arr
    if deg == 0 or m == 0:
        conv_arr[:] = 1
        return roots_arr, conv_arr.astype(bool)

    cdef double complex[::1] c = np.empty(deg, dtype=np.complex128)
    cdef double complex[::1] z = np.empty(deg, dtype=np.complex128)
    cdef double complex[::1] zn = np.empty(deg, dtype=np.complex128)
    cdef double complex lead, p, denom, step, seed_pow, val
    cdef double complex seed = 0.4 + 0.9j
    cdef double radius, mx, rel, worst, av
    cdef Py_ssize_t i, j, k, it
    cdef bint done, bad

    for i in range(m):
        lead = coeffs[i, deg]
        mx = 0.0
        for k in range(deg):
            c[k] = coeffs[i, k] / lead
            av = abs(c[k])
            if av > mx:
                mx = av
        radius = 1.0 + mx
        seed_pow = 1.0 + 0.0j
        for j in range(deg):
            seed_pow = seed_pow * seed
            z[j] = radius * seed_pow

        done = False
        bad = False
        for it in range(max_iter):
            worst = 0.0
            for j in range(deg):
                p = 1.0 + 0.0j
                for k in range(deg - 1, -1, -1):
                    p = p * z[j] + c[k]
                denom = 1.0 + 0.0j
                for k in range(deg):
                    if k != j:
                        denom = denom * (z[j] - z[k])
                if denom == 0:
                    bad = True
                    break
                step = p / denom
                zn[j] = z[j] - step
                rel = abs(step) / (1.0 + abs(zn[j]))
                if rel > worst:
                    worst = rel
                if zn[j] != zn[j]:  # NaN check
                    bad = True
                    break
            if bad:
                break
            for j in range(deg):
                z[j] = zn[j]
            if worst < tol:
                done = True
                break
        for j in range(deg):
            roots[i, j] = z[j]
        conv[i] = 1 if (done and not bad) else 0
    return roots_arr, conv_arr.astype(bool)


def torus_log_abs_mean(object exps_in, object coefs_in, double x1, double x2,
                       int n, double floor=1e-14):
    """Mean of log|f| over the n-by-n torus angle grid; see the Python twin."""
    exps_arr = np.ascontiguousarray(exps_in, dtype=np.int64)
    coefs_arr = np.ascontiguousarray(coefs_in, dtype=np.complex128)
    cdef long long[:, ::1] exps = exps_arr
    cdef double complex[::1] coefs = coefs_arr
    cdef Py_ssize_t t = exps.shape[0]
    cdef Py_ssize_t i, j, k
    tab1_arr = np.empty((t, n), dtype=np.complex128)
    tab2_arr = np.empty((t, n), dtype=np.complex128)
    cdef double complex[:, ::1] tab1 = tab1_arr
    cdef double complex[:, ::1] tab2 = tab2_arr
    cdef double theta, mod1, mod2, mag, total
    cdef double complex f
    cdef long long a1, a2
    cdef Py_ssize_t used = 0

    for k in range(t):
        a1 = exps[k, 0]
        a2 = exps[k, 1]
        mod1 = exp(x1 * a1)
        mod2 = exp(x2 * a2)
        for i in range(n):
            theta = 2.0 * PI * i / n
            tab1[k, i] = mod1 * (cos(theta * a1) + 1j * sin(theta * a1))
            tab2[k, i] = mod2 * (cos(theta * a2) + 1j * sin(theta * a2))

    total = 0.0
    for i in range(n):
        for j in range(n):
            f = 0
            for k in range(t):
                f = f + coefs[k] * tab1[k, i] * tab2[k, j]
            mag = abs(f)
            if mag >= floor:
                total += log(mag)
                used += 1
    if used == 0:
        return float("-inf"), n * n
    return total / used, n * n - used
