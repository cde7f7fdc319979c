"""Amoeba membership rasters, the order map, and Ronkin function quadrature.

Membership is painted: fiber polynomials are solved along grid rows and
columns for many torus angles, each root marking the cell containing its
log-modulus.  Painted membership is a sampled subset of the true amoeba and
is closed with a one-cell morphological pass; it is never claimed certified.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from . import kernels
from .errors import OnAmoebaError, QuadratureError
from .geometry import LatticePolytope, convex_hull
from .laurent import LaurentPolynomial

_FOUR_CONN = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)


@dataclass(frozen=True)
class Window:
    """Axis-aligned view of the log plane with a fixed cell grid."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float
    nx: int
    ny: int

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError("window bounds must be ordered")
        if self.nx < 2 or self.ny < 2:
            raise ValueError("resolution must be at least 2 per axis")

    @classmethod
    def square(cls, lo: float, hi: float, resolution: int) -> "Window":
        return cls(lo, hi, lo, hi, resolution, resolution)

    @property
    def hx(self) -> float:
        return (self.x_max - self.x_min) / self.nx

    @property
    def hy(self) -> float:
        return (self.y_max - self.y_min) / self.ny

    def x_centers(self) -> np.ndarray:
        return self.x_min + (np.arange(self.nx) + 0.5) * self.hx

    def y_centers(self) -> np.ndarray:
        return self.y_min + (np.arange(self.ny) + 0.5) * self.hy

    def cell_of(self, x: float, y: float):
        ix = int(math.floor((x - self.x_min) / self.hx))
        iy = int(math.floor((y - self.y_min) / self.hy))
        if 0 <= ix < self.nx and 0 <= iy < self.ny:
            return ix, iy
        return None

    def center_of(self, ix: int, iy: int) -> tuple[float, float]:
        return (self.x_min + (ix + 0.5) * self.hx, self.y_min + (iy + 0.5) * self.hy)

    def to_obj(self) -> dict:
        return {"x_min": self.x_min, "x_max": self.x_max,
                "y_min": self.y_min, "y_max": self.y_max,
                "nx": self.nx, "ny": self.ny}


@dataclass
class AmoebaRaster:
    """Windowed boolean membership grid with complement component labels.

    ``membership[ix, iy]`` marks cell (ix, iy); ``component_id`` is -1 on
    member cells and a positive label on complement cells.  Orders are stored
    per component once label_components has run.
    """

    window: Window
    membership: np.ndarray
    component_id: np.ndarray | None = None
    component_orders: dict = field(default_factory=dict)
    component_bounded: dict = field(default_factory=dict)
    unresolved: set = field(default_factory=set)
    warnings: list = field(default_factory=list)

    @property
    def labeled(self) -> bool:
        return self.component_id is not None

    def component_count(self) -> int:
        return len(self.component_orders) + len(self.unresolved)

    def is_thin(self) -> bool:
        """True when membership has (almost) no interior cells: a measure-zero
        amoeba rasterized as lines."""
        mem = self.membership
        if not mem.any():
            return True
        interior = (mem
                    & np.roll(mem, 1, 0) & np.roll(mem, -1, 0)
                    & np.roll(mem, 1, 1) & np.roll(mem, -1, 1))
        interior[0, :] = interior[-1, :] = False
        interior[:, 0] = interior[:, -1] = False
        return int(interior.sum()) < 0.05 * int(mem.sum())

    def boundary_cells(self) -> np.ndarray:
        """Member cells with at least one non-member 4-neighbor (or on the edge)."""
        mem = self.membership
        pad = np.pad(mem, 1, mode="constant", constant_values=False)
        nb = (pad[:-2, 1:-1] & pad[2:, 1:-1] & pad[1:-1, :-2] & pad[1:-1, 2:])
        return mem & ~nb

    def to_obj(self) -> dict:
        runs = []
        for iy in range(self.window.ny):
            col = self.membership[:, iy]
            row_runs = []
            ix = 0
            while ix < len(col):
                if col[ix]:
                    start = ix
                    while ix < len(col) and col[ix]:
                        ix += 1
                    row_runs.append([start, ix - start])
                else:
                    ix += 1
            runs.append(row_runs)
        comps = [{"id": cid, "order": list(self.component_orders[cid]),
                  "bounded": bool(self.component_bounded.get(cid, False))}
                 for cid in sorted(self.component_orders)]
        comps += [{"id": cid, "order": None,
                   "bounded": bool(self.component_bounded.get(cid, False))}
                  for cid in sorted(self.unresolved)]
        return {"window": self.window.to_obj(), "membership_runs": runs,
                "components": comps, "warnings": list(self.warnings)}


# ---------------------------------------------------------------------------
# painting
# ---------------------------------------------------------------------------

def _fiber_coeff_batch(f: LaurentPolynomial, free_axis: int, fixed: np.ndarray):
    """Coefficient matrix of the fiber polynomials for a batch of fixed values.

    Returns (coeffs ascending with shape (len(fixed), degree_span + 1), shift).
    """
    frees = sorted({a1 if free_axis == 1 else a2 for (a1, a2) in f.support})
    lo, hi = frees[0], frees[-1]
    out = np.zeros((len(fixed), hi - lo + 1), dtype=np.complex128)
    for (a1, a2), c in sorted(f.terms.items()):
        k_free, k_fix = (a1, a2) if free_axis == 1 else (a2, a1)
        out[:, k_free - lo] += c * fixed**k_fix
    return out, lo


def _row_angles(seed: int, axis: int, index: int, count: int) -> np.ndarray:
    rng = np.random.default_rng(np.random.SeedSequence([seed, axis, index]))
    jitter = rng.random()
    return 2.0 * np.pi * (np.arange(count) + jitter) / count


def raster_amoeba(f: LaurentPolynomial, window: Window, angle_samples: int = 256,
                  seed: int = 0, workers: int = 1) -> AmoebaRaster:
    """Paint amoeba membership by root solving along both sweep directions."""
    if angle_samples < 16:
        raise ValueError("angle_samples must be at least 16")
    membership = np.zeros((window.nx, window.ny), dtype=bool)
    raster = AmoebaRaster(window=window, membership=membership)
    if len(f.support) < 2:
        raster.warnings.append("monomial input: amoeba is empty")
        return raster

    xc = window.x_centers()
    yc = window.y_centers()

    def sweep_row(iy: int) -> np.ndarray:
        theta = _row_angles(seed, 1, iy, angle_samples)
        fixed = np.exp(yc[iy]) * np.exp(1j * theta)
        coeffs, _ = _fiber_coeff_batch(f, 1, fixed)
        roots, _ = kernels.roots_batch(coeffs)
        mags = np.abs(roots.ravel())
        mags = mags[np.isfinite(mags) & (mags > 0)]
        with np.errstate(divide="ignore"):
            ix = np.floor((np.log(mags) - window.x_min) / window.hx).astype(np.int64)
        return np.unique(ix[(ix >= 0) & (ix < window.nx)])

    def sweep_col(ix: int) -> np.ndarray:
        theta = _row_angles(seed, 2, ix, angle_samples)
        fixed = np.exp(xc[ix]) * np.exp(1j * theta)
        coeffs, _ = _fiber_coeff_batch(f, 2, fixed)
        roots, _ = kernels.roots_batch(coeffs)
        mags = np.abs(roots.ravel())
        mags = mags[np.isfinite(mags) & (mags > 0)]
        with np.errstate(divide="ignore"):
            iy = np.floor((np.log(mags) - window.y_min) / window.hy).astype(np.int64)
        return np.unique(iy[(iy >= 0) & (iy < window.ny)])

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            row_hits = list(pool.map(sweep_row, range(window.ny)))
            col_hits = list(pool.map(sweep_col, range(window.nx)))
    else:
        row_hits = [sweep_row(iy) for iy in range(window.ny)]
        col_hits = [sweep_col(ix) for ix in range(window.nx)]

    for iy, hits in enumerate(row_hits):
        membership[hits, iy] = True
    for ix, hits in enumerate(col_hits):
        membership[ix, hits] = True

    padded = np.pad(membership, 1, mode="edge")
    closed = ndimage.binary_closing(padded, structure=np.ones((3, 3), dtype=bool))
    raster.membership = closed[1:-1, 1:-1]
    return raster


# ---------------------------------------------------------------------------
# order map
# ---------------------------------------------------------------------------

def order_at(f: LaurentPolynomial, x, trials: int = 8, seed: int = 0):
    """Order of a complement point: per axis, the shift-corrected number of
    fiber roots inside the torus radius, consistent across random angles."""
    x1, x2 = float(x[0]), float(x[1])
    out = []
    for axis in (1, 2):
        radius = math.exp(x1 if axis == 1 else x2)
        other = x2 if axis == 1 else x1
        rng = np.random.default_rng(np.random.SeedSequence([seed, 97, axis]))
        theta = rng.random(trials) * 2.0 * np.pi
        fixed = np.exp(other) * np.exp(1j * theta)
        coeffs, shift = _fiber_coeff_batch(f, axis, fixed)
        roots, counts = kernels.roots_batch(coeffs)
        per_trial = []
        for t in range(trials):
            mags = np.abs(roots[t, :counts[t]])
            mags = mags[np.isfinite(mags)]
            if np.any(np.abs(mags - radius) < 1e-6):
                raise OnAmoebaError("point on or near amoeba")
            per_trial.append(shift + int(np.sum(mags < radius)))
        if len(set(per_trial)) != 1:
            raise OnAmoebaError("point on or near amoeba: root counts disagree across angles")
        out.append(per_trial[0])
    return (out[0], out[1])


def _deep_cells(raster: AmoebaRaster, depth: np.ndarray, cid: int,
                count: int, min_sep: int):
    """Up to ``count`` deep cells of one component, pairwise min_sep apart."""
    cells = np.argwhere(raster.component_id == cid)
    order = np.lexsort((cells[:, 1], cells[:, 0], -depth[cells[:, 0], cells[:, 1]]))
    chosen: list[tuple[int, int]] = []
    for k in order:
        ix, iy = int(cells[k][0]), int(cells[k][1])
        if all(max(abs(ix - a), abs(iy - b)) >= min_sep for a, b in chosen):
            chosen.append((ix, iy))
            if len(chosen) >= count:
                break
    return chosen


def label_components(raster: AmoebaRaster, f: LaurentPolynomial,
                     trials: int = 8, seed: int = 0) -> AmoebaRaster:
    """Flood-fill the complement and attach an order to every component.

    Orders are evaluated at the cells farthest from the amoeba; every returned
    order must be a lattice point of the Newton polygon.  Components whose
    order cannot be resolved are flagged.
    """
    mem = raster.membership
    comp, ncomp = ndimage.label(~mem, structure=_FOUR_CONN)
    if mem.any():
        depth = ndimage.distance_transform_cdt(~mem, metric="chessboard")
    else:
        depth = np.ones_like(comp)
    raster.component_id = np.where(mem, -1, comp)
    raster.component_orders = {}
    raster.component_bounded = {}
    raster.unresolved = set()

    newton = convex_hull(f.support)
    for cid in range(1, ncomp + 1):
        mask = comp == cid
        touches_edge = (mask[0, :].any() or mask[-1, :].any()
                        or mask[:, 0].any() or mask[:, -1].any())
        raster.component_bounded[cid] = not touches_edge
        order = None
        for ix, iy in _deep_cells(raster, depth, cid, count=8, min_sep=3):
            try:
                order = order_at(f, raster.window.center_of(ix, iy),
                                 trials=trials, seed=seed)
                break
            except OnAmoebaError:
                continue
        if order is None:
            raster.unresolved.add(cid)
            raster.warnings.append(f"component {cid}: order unresolved")
            continue
        if not newton.contains(order):
            raster.unresolved.add(cid)
            raster.warnings.append(
                f"component {cid}: order {order} outside the Newton polygon")
            continue
        raster.component_orders[cid] = order

    seen = set(raster.component_orders.values())
    if newton.dim == 2:
        vertex_orders = set(newton.vertices)
    elif newton.dim == 1:
        vertex_orders = set(newton.vertices)
    else:
        vertex_orders = {newton.vertices[0]}
    for v in sorted(vertex_orders - seen):
        raster.warnings.append(
            f"Newton vertex order {v} not seen among components (window too small?)")
    return raster


# ---------------------------------------------------------------------------
# Ronkin function
# ---------------------------------------------------------------------------

def ronkin(f: LaurentPolynomial, x, quad_n: int = 256) -> float:
    """Torus average of log|f| at the given log-coordinates (tensor trapezoid,
    which is the uniform grid mean for periodic integrands)."""
    if quad_n < 64:
        raise ValueError("quad_n must be at least 64")
    exps = np.array(f.support, dtype=np.int64)
    coefs = np.array([f.terms[tuple(e)] for e in f.support], dtype=np.complex128)
    mean, _ = kernels.ronkin_mean(exps, coefs, float(x[0]), float(x[1]), quad_n)
    return mean


def ronkin_gradient(f: LaurentPolynomial, x, h: float = 1e-3,
                    quad_n: int = 256) -> tuple[float, float]:
    """Central finite-difference gradient of the Ronkin function."""
    g1 = (ronkin(f, (x[0] + h, x[1]), quad_n) - ronkin(f, (x[0] - h, x[1]), quad_n)) / (2 * h)
    g2 = (ronkin(f, (x[0], x[1] + h), quad_n) - ronkin(f, (x[0], x[1] - h), quad_n)) / (2 * h)
    return g1, g2


def ronkin_coefficient(f: LaurentPolynomial, sample_points, alpha,
                       quad_n: int = 256, trials: int = 8, seed: int = 0,
                       std_tol: float = 5e-3):
    """Affine intercept of the Ronkin function on one complement component.

    Every sample must carry the expected order; the spread across samples
    must stay below std_tol or the quadrature is declared too coarse.
    Returns (mean, std).
    """
    pts = [tuple(map(float, p)) for p in sample_points]
    if len(pts) < 3:
        raise ValueError("need at least 3 sample points")
    a1, a2 = int(alpha[0]), int(alpha[1])
    for p in pts:
        got = order_at(f, p, trials=trials, seed=seed)
        if got != (a1, a2):
            raise ValueError(f"sample {p} has order {got}, expected {(a1, a2)}")
    vals = [ronkin(f, p, quad_n) - (a1 * p[0] + a2 * p[1]) for p in pts]
    mean = float(np.mean(vals))
    std = float(np.std(vals))
    if std >= std_tol:
        raise QuadratureError(f"quadrature too coarse: intercept spread {std:.2e}")
    return mean, std


def line_amoeba_oracle(a: float, b: float, c: float, window: Window) -> np.ndarray:
    """Exact membership of the amoeba of a*z1 + b*z2 + c at cell centers.

    A point is in the amoeba iff (|a|e^x1, |b|e^x2, |c|) satisfy the triangle
    inequality.  Used as an independent check of painted rasters.
    """
    u = abs(a) * np.exp(window.x_centers())[:, None]
    v = abs(b) * np.exp(window.y_centers())[None, :]
    w = abs(c)
    return (u <= v + w) & (v <= u + w) & (w <= u + v)
