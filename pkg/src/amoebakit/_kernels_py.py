"""Pure-Python (NumPy) implementations of the hot kernels.

Mirrors the compiled module in amoebakit._kernels: same functions, same
algorithms, same per-item update rule, so results agree to rounding.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"

_DK_SEED = 0.4 + 0.9j  # classic simultaneous-iteration starting ray


def dk_roots_batch(coeffs: np.ndarray, max_iter: int = 200, tol: float = 1e-12):
    """Simultaneous (Durand-Kerner) root iteration on a batch of polynomials.

    ``coeffs`` has shape (m, deg + 1), ascending powers, nonzero leading
    column.  Each row iterates independently and freezes once its own update
    is below tol, so results do not depend on how rows are batched.
    Returns (roots, converged) with shapes (m, deg) and (m,).
    """
    coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
    m, n = coeffs.shape
    deg = n - 1
    roots = np.empty((m, deg), dtype=np.complex128)
    converged = np.zeros(m, dtype=bool)
    if deg == 0 or m == 0:
        converged[:] = True
        return roots, converged

    cn = coeffs / coeffs[:, -1:]
    radius = 1.0 + np.max(np.abs(cn[:, :-1]), axis=1)
    powers = _DK_SEED ** np.arange(1, deg + 1)
    z = radius[:, None] * powers[None, :]

    active = np.ones(m, dtype=bool)
    for _ in range(max_iter):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        za = z[idx]
        ca = cn[idx]
        p = np.ones_like(za)
        for k in range(deg - 1, -1, -1):
            p = p * za + ca[:, k][:, None]
        diff = za[:, :, None] - za[:, None, :]
        rng = np.arange(deg)
        diff[:, rng, rng] = 1.0
        denom = np.prod(diff, axis=2)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            step = p / denom
            zn = za - step
            rel = np.max(np.abs(step) / (1.0 + np.abs(zn)), axis=1)
        z[idx] = zn
        done = np.isfinite(rel) & (rel < tol)
        bad = ~np.isfinite(zn).all(axis=1)
        converged[idx[done]] = True
        active[idx[done]] = False
        active[idx[bad]] = False
    roots[:] = z
    return roots, converged


def torus_log_abs_mean(exps: np.ndarray, coefs: np.ndarray, x1: float, x2: float,
                       n: int, floor: float = 1e-14):
    """Mean of log|f| over the n-by-n uniform angle grid of the torus fiber.

    Nodes with |f| below ``floor`` are skipped (integrable singularities).
    Returns (mean, skipped_count).
    """
    exps = np.asarray(exps, dtype=np.int64)
    coefs = np.asarray(coefs, dtype=np.complex128)
    theta = 2.0 * np.pi * np.arange(n) / n
    phase = np.exp(1j * theta)
    f = np.zeros((n, n), dtype=np.complex128)
    for (a1, a2), c in zip(exps, coefs):
        w1 = np.exp(x1 * a1) * phase**a1
        w2 = np.exp(x2 * a2) * phase**a2
        f += c * np.outer(w1, w2)
    mag = np.abs(f)
    mask = mag >= floor
    used = int(mask.sum())
    skipped = n * n - used
    if used == 0:
        return float("-inf"), skipped
    total = float(np.sum(np.log(mag[mask])))
    return total / used, skipped
