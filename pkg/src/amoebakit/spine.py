"""Spines: tropical curves of the Ronkin-coefficient lift, plus the
neighborhood-shrinking experiment for intersection component counts."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .amoeba import AmoebaRaster, _deep_cells, ronkin_coefficient
from .errors import OnAmoebaError, UnresolvedComponentError
from .laurent import LaurentPolynomial
from .tropical import TropicalCurve, TropicalPoly, tropical_curve

_FOUR_CONN = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)


@dataclass
class SpineData:
    """Support (orders of non-empty complement components), Ronkin
    coefficients, and the resulting tropical curve."""

    support: tuple
    coefficients: tuple
    coefficient_stds: tuple
    curve: TropicalCurve
    incomplete: bool = False
    warnings: list = field(default_factory=list)

    def to_obj(self) -> dict:
        return {
            "support": [list(a) for a in self.support],
            "coefficients": list(self.coefficients),
            "coefficient_stds": list(self.coefficient_stds),
            "incomplete": self.incomplete,
            "warnings": list(self.warnings),
            "curve": curve_to_obj(self.curve),
        }


def curve_to_obj(curve: TropicalCurve) -> dict:
    return {
        "vertices": [[float(a), float(b)] for a, b in curve.vertices],
        "edges": [{"a": [float(e.a[0]), float(e.a[1])],
                   "b": [float(e.b[0]), float(e.b[1])],
                   "direction": list(e.direction), "weight": e.weight,
                   "dual": [list(e.dual[0]), list(e.dual[1])]}
                  for e in curve.edges],
        "rays": [{"base": [float(r.base[0]), float(r.base[1])],
                  "direction": list(r.direction), "weight": r.weight,
                  "dual": [list(r.dual[0]), list(r.dual[1])]}
                 for r in curve.rays],
        "line_family": curve.line_family,
    }


def build_spine(f: LaurentPolynomial, raster: AmoebaRaster, quad_n: int = 256,
                trials: int = 8, seed: int = 0,
                samples_per_component: int = 5) -> SpineData:
    """Tropical curve of the lift order -> Ronkin coefficient.

    Components whose coefficient cannot be sampled are omitted and the spine
    is marked incomplete (honest degradation; the curve is then only an
    approximation of the true spine).  Each spine vertex and edge midpoint is
    checked to land in a painted cell.
    """
    if not raster.labeled:
        raise ValueError("raster must be labeled first (see label_components)")
    warnings: list[str] = []
    incomplete = bool(raster.unresolved)
    if incomplete:
        warnings.append("spine incomplete: unresolved complement components")
    if any(w.startswith("Newton vertex order") for w in raster.warnings):
        incomplete = True
        warnings.append("spine incomplete: some Newton vertex components not visible")

    mem = raster.membership
    depth = ndimage.distance_transform_cdt(~mem, metric="chessboard") if mem.any() \
        else np.ones_like(raster.component_id)

    support = []
    coeffs = []
    stds = []
    for cid in sorted(raster.component_orders,
                      key=lambda c: raster.component_orders[c]):
        order = raster.component_orders[cid]
        candidates = _deep_cells(raster, depth, cid,
                                 count=samples_per_component + 3, min_sep=2)
        pts = []
        for ix, iy in candidates:
            p = raster.window.center_of(ix, iy)
            try:
                from .amoeba import order_at
                if order_at(f, p, trials=trials, seed=seed) == order:
                    pts.append(p)
            except OnAmoebaError:
                continue
            if len(pts) >= samples_per_component:
                break
        if len(pts) < 3:
            incomplete = True
            warnings.append(f"spine incomplete: component of order {order} too "
                            "thin to sample")
            continue
        r, s = ronkin_coefficient(f, pts, order, quad_n=quad_n,
                                  trials=trials, seed=seed)
        support.append(order)
        coeffs.append(r)
        stds.append(s)

    if len(support) < 2:
        raise UnresolvedComponentError(
            "cannot build a spine from fewer than two resolved components")
    curve = tropical_curve(TropicalPoly(tuple(support), tuple(coeffs)))

    probe_pts = [(float(a), float(b)) for a, b in curve.vertices]
    for e in curve.edges:
        probe_pts.append((float(e.a[0] + e.b[0]) / 2.0, float(e.a[1] + e.b[1]) / 2.0))
    for p in probe_pts:
        cell = raster.window.cell_of(*p)
        if cell is not None and not raster.membership[cell]:
            warnings.append(f"raster too coarse: spine point {p} in a non-member cell")
            break

    return SpineData(support=tuple(support), coefficients=tuple(coeffs),
                     coefficient_stds=tuple(stds), curve=curve,
                     incomplete=incomplete, warnings=warnings)


# ---------------------------------------------------------------------------
# neighborhood shrinking experiment
# ---------------------------------------------------------------------------

def _clip_ray(base, direction, window, pad: float):
    """Parameter interval of base + t*direction inside the padded window."""
    t0, t1 = 0.0, math.inf
    bounds = ((window.x_min - pad, window.x_max + pad),
              (window.y_min - pad, window.y_max + pad))
    for axis in (0, 1):
        b = float(base[axis])
        d = float(direction[axis])
        lo, hi = bounds[axis]
        if d == 0:
            if not (lo <= b <= hi):
                return None
            continue
        ta, tb = (lo - b) / d, (hi - b) / d
        if ta > tb:
            ta, tb = tb, ta
        t0, t1 = max(t0, ta), min(t1, tb)
    if t0 > t1:
        return None
    return t0, t1


def rasterize_curve(curve: TropicalCurve, window) -> np.ndarray:
    """Cells traversed by the curve (sampled at half-cell steps)."""
    mask = np.zeros((window.nx, window.ny), dtype=bool)
    step = 0.5 * min(window.hx, window.hy)
    pad = 2.0 * max(window.hx, window.hy)
    for base, d, t_max, _w, _dual, _key in curve.segments():
        norm = math.hypot(d[0], d[1])
        if t_max is None:
            clip = _clip_ray(base, d, window, pad)
            if clip is None:
                continue
            lo, hi = clip
        else:
            lo, hi = 0.0, float(t_max)
            clip = _clip_ray(base, d, window, pad)
            if clip is None:
                continue
            lo, hi = max(lo, clip[0]), min(hi, clip[1])
            if lo > hi:
                continue
        n = max(2, int(math.ceil((hi - lo) * norm / step)) + 1)
        ts = np.linspace(lo, hi, n)
        xs = float(base[0]) + ts * d[0]
        ys = float(base[1]) + ts * d[1]
        ix = np.floor((xs - window.x_min) / window.hx).astype(int)
        iy = np.floor((ys - window.y_min) / window.hy).astype(int)
        ok = (ix >= 0) & (ix < window.nx) & (iy >= 0) & (iy < window.ny)
        mask[ix[ok], iy[ok]] = True
    return mask


def retract_experiment(spines, rasters, epsilons):
    """Component counts of the intersection of shrinking spine neighborhoods.

    Neighborhoods use the raster (Chebyshev) metric.  Epsilons must be
    strictly decreasing and stay above the cell size.
    """
    eps = [float(e) for e in epsilons]
    if not eps or any(b >= a for a, b in zip(eps, eps[1:])) or eps[-1] <= 0:
        raise ValueError("epsilons must be positive and strictly decreasing")
    window = rasters[0].window
    h = max(window.hx, window.hy)
    if min(eps) < h:
        raise ValueError(f"epsilon {min(eps)} below raster resolution {h:.4g}")
    bases = [rasterize_curve(s.curve, window) for s in spines]
    rows = []
    for e in eps:
        k = int(round(e / h))
        size = 2 * k + 1
        hoods = [ndimage.binary_dilation(b, structure=np.ones((size, size), dtype=bool))
                 for b in bases]
        inter = hoods[0]
        for hd in hoods[1:]:
            inter = inter & hd
        _, n = ndimage.label(inter, structure=_FOUR_CONN)
        rows.append({"epsilon": e, "cells": k, "components": int(n)})
    return rows
