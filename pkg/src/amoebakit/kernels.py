"""Kernel backend selection and shared driver logic.

The compiled extension is preferred when present; AMOEBAKIT_PURE_PYTHON=1
forces the NumPy fallback.  Effective-degree trimming and the companion-matrix
rescue for non-converged fibers live here so both backends behave identically.
"""

from __future__ import annotations

import os

import numpy as np

if os.environ.get("AMOEBAKIT_PURE_PYTHON"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl


def backend_name() -> str:
    return getattr(_impl, "BACKEND_NAME", "python")


def roots_batch(coeffs: np.ndarray, max_iter: int = 200, tol: float = 1e-12):
    """Roots of a batch of ascending-coefficient polynomials.

    Rows may have different effective degrees (tiny leading coefficients are
    trimmed at 1e-12 relative).  Returns (roots, counts): roots is NaN-padded
    with shape (m, max_degree), counts[i] is the number of valid roots in row
    i.  Non-converged rows fall back to the companion matrix (np.roots).
    """
    coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
    m, n = coeffs.shape
    nominal = n - 1
    roots = np.full((m, max(nominal, 1)), np.nan + 0j, dtype=np.complex128)
    counts = np.zeros(m, dtype=np.int64)
    if m == 0 or nominal == 0:
        return roots[:, :nominal] if nominal else roots[:, :0], counts

    mags = np.abs(coeffs)
    scale = mags.max(axis=1)
    eff = np.full(m, -1, dtype=np.int64)
    for k in range(nominal, -1, -1):
        undecided = eff < 0
        big = mags[:, k] > 1e-12 * scale
        eff[undecided & big] = k

    for deg in range(1, nominal + 1):
        rows = np.flatnonzero(eff == deg)
        if rows.size == 0:
            continue
        sub = coeffs[rows, :deg + 1]
        got, converged = _impl.dk_roots_batch(sub, max_iter, tol)
        got = np.asarray(got)
        converged = np.asarray(converged)
        for pos, row in enumerate(rows):
            if converged[pos]:
                roots[row, :deg] = got[pos]
            else:
                fallback = np.roots(sub[pos, ::-1])
                roots[row, :len(fallback)] = fallback
                roots[row, len(fallback):deg] = np.nan + 0j
            counts[row] = deg
    return roots, counts


def ronkin_mean(exps, coefs, x1: float, x2: float, n: int, floor: float = 1e-14):
    """Mean of log|f| over the n-by-n torus angle grid; (mean, skipped)."""
    exps = np.ascontiguousarray(exps, dtype=np.int64)
    coefs = np.ascontiguousarray(coefs, dtype=np.complex128)
    mean, skipped = _impl.torus_log_abs_mean(exps, coefs, float(x1), float(x2),
                                             int(n), float(floor))
    return float(mean), int(skipped)
