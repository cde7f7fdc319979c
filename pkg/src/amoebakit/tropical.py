"""Max-plus tropical polynomials, plane tropical curves, stable intersections.

Curves are built from the regular subdivision induced by lifting each support
point to its coefficient (exact rational upper hull).  Stable intersections
are computed as exact limits of rational epsilon-translations, so multiplicity
totals are exact integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DegenerateSupportError, NonConvergentIntersectionError
from .geometry import LatticePolytope, convex_hull, cross2, lattice_length, primitive

Point = tuple[int, int]
QPoint = tuple[Fraction, Fraction]

_GOLDEN = Fraction(1_618_033_988_749_895, 10**15)


def snap_to_rational(x, resolution: int = 10**9) -> Fraction:
    """Round a float lift onto the rational grid used for exact hulling."""
    if isinstance(x, Fraction):
        return x
    return Fraction(round(float(x) * resolution), resolution)


@dataclass(frozen=True)
class TropicalPoly:
    """max over support of (coefficient + <x, exponent>)."""

    support: tuple[Point, ...]
    coeffs: tuple

    def __post_init__(self):
        sup = tuple((int(a), int(b)) for a, b in self.support)
        if len(set(sup)) != len(sup):
            raise ValueError("support points must be distinct")
        if len(sup) != len(self.coeffs):
            raise ValueError("support and coefficient lists differ in length")
        object.__setattr__(self, "support", sup)
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    def rational(self, resolution: int = 10**9) -> "TropicalPoly":
        return TropicalPoly(self.support, tuple(snap_to_rational(c, resolution)
                                                for c in self.coeffs))

    def shifted(self, c) -> "TropicalPoly":
        return TropicalPoly(self.support, tuple(b + c for b in self.coeffs))


def tropical_eval(h: TropicalPoly, x, tol: float = 1e-9):
    """Value of the max-plus polynomial and the support points attaining it."""
    vals = [float(b) + float(a[0]) * x[0] + float(a[1]) * x[1]
            for a, b in zip(h.support, h.coeffs)]
    top = max(vals)
    argmax = [h.support[i] for i, v in enumerate(vals) if top - v <= tol]
    return top, argmax


# ---------------------------------------------------------------------------
# regular subdivisions via exact upper hulls
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubdivisionCell:
    """A maximal cell of the lift-induced subdivision.

    ``points`` lists every support point on the cell (including interior
    ones); ``polygon`` is its hull; ``plane`` is the affine functional
    (c1, c2, d) with <c, a> + d touching the lift from above on the cell.
    """

    points: tuple[Point, ...]
    polygon: LatticePolytope
    plane: tuple[Fraction, Fraction, Fraction]


def _solve3(rows, rhs):
    """Exact 3x3 linear solve over Fractions; None when singular."""
    m = [list(map(Fraction, r)) + [Fraction(v)] for r, v in zip(rows, rhs)]
    n = 3
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return tuple(m[r][3] for r in range(n))


def regular_subdivision(support, lifts) -> list[SubdivisionCell]:
    """Maximal cells of the subdivision induced by the (exact) lifts."""
    pts = [tuple(int(c) for c in p) for p in support]
    bs = [Fraction(b) for b in lifts]
    n = len(pts)
    seen: dict[frozenset, SubdivisionCell] = {}
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                if cross2((pts[j][0] - pts[i][0], pts[j][1] - pts[i][1]),
                          (pts[k][0] - pts[i][0], pts[k][1] - pts[i][1])) == 0:
                    continue
                plane = _solve3([(pts[i][0], pts[i][1], 1),
                                 (pts[j][0], pts[j][1], 1),
                                 (pts[k][0], pts[k][1], 1)],
                                [bs[i], bs[j], bs[k]])
                c1, c2, d = plane
                values = [c1 * p[0] + c2 * p[1] + d - b for p, b in zip(pts, bs)]
                if any(v < 0 for v in values):
                    continue
                eq = frozenset(m for m in range(n) if values[m] == 0)
                if eq in seen:
                    continue
                cell_pts = tuple(sorted(pts[m] for m in eq))
                seen[eq] = SubdivisionCell(points=cell_pts,
                                           polygon=convex_hull(cell_pts),
                                           plane=plane)
    return sorted(seen.values(), key=lambda c: c.points)


# ---------------------------------------------------------------------------
# curves
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CurveEdge:
    a: QPoint
    b: QPoint
    direction: Point          # primitive, oriented a -> b
    weight: int
    dual: tuple[Point, Point]  # subdivision edge endpoints


@dataclass(frozen=True)
class CurveRay:
    base: QPoint
    direction: Point
    weight: int
    dual: tuple[Point, Point]


@dataclass(frozen=True)
class TropicalCurve:
    """Balanced weighted 1-complex dual to a regular subdivision.

    A one-dimensional support yields a family of parallel full lines, each
    stored as two opposite rays from a base point (no vertices).
    """

    vertices: tuple[QPoint, ...]
    edges: tuple[CurveEdge, ...]
    rays: tuple[CurveRay, ...]
    dual_cells: tuple[tuple[Point, ...], ...]
    newton: LatticePolytope
    line_family: bool = False

    def segments(self):
        """Unified carrier list: (base, dir, t_max or None, weight, dual, key)."""
        out = []
        for i, e in enumerate(self.edges):
            d = e.direction
            span = (e.b[0] - e.a[0], e.b[1] - e.a[1])
            t_max = span[0] / d[0] if d[0] else span[1] / d[1]
            out.append((e.a, d, t_max, e.weight, e.dual, ("e", i)))
        for i, r in enumerate(self.rays):
            out.append((r.base, r.direction, None, r.weight, r.dual, ("r", i)))
        return out

    def translated(self, v: QPoint) -> "TropicalCurve":
        def mv(p):
            return (p[0] + v[0], p[1] + v[1])

        return TropicalCurve(
            vertices=tuple(mv(p) for p in self.vertices),
            edges=tuple(CurveEdge(mv(e.a), mv(e.b), e.direction, e.weight, e.dual)
                        for e in self.edges),
            rays=tuple(CurveRay(mv(r.base), r.direction, r.weight, r.dual)
                       for r in self.rays),
            dual_cells=self.dual_cells,
            newton=self.newton,
            line_family=self.line_family,
        )

    def bbox(self):
        pts = [(float(p[0]), float(p[1])) for p in self.vertices]
        pts += [(float(r.base[0]), float(r.base[1])) for r in self.rays]
        pts += [(float(e.a[0]), float(e.a[1])) for e in self.edges]
        if not pts:
            return (-1.0, 1.0, -1.0, 1.0)
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        return (min(xs), max(xs), min(ys), max(ys))


def _vertex_position(cell: SubdivisionCell) -> QPoint:
    c1, c2, _ = cell.plane
    # The dual vertex is where every monomial of the cell ties: x = -c.
    return (-c1, -c2)


def _line_family_curve(h: TropicalPoly) -> TropicalCurve:
    pts = list(h.support)
    base_pt = pts[0]
    direction = None
    for p in pts[1:]:
        if p != base_pt:
            direction = primitive((p[0] - base_pt[0], p[1] - base_pt[1]))
            break
    u = direction
    t = []
    for p in pts:
        dv = (p[0] - base_pt[0], p[1] - base_pt[1])
        t.append(dv[0] // u[0] if u[0] else dv[1] // u[1])
    order = sorted(range(len(pts)), key=lambda i: t[i])
    ts = [Fraction(t[i]) for i in order]
    bs = [Fraction(h.coeffs[i]) for i in order]
    # Upper hull of (t, b) in the plane.
    hull = []
    for i in range(len(ts)):
        while len(hull) >= 2:
            (t1, b1), (t2, b2) = hull[-2], hull[-1]
            if (b2 - b1) * (ts[i] - t1) <= (bs[i] - b1) * (t2 - t1):
                hull.pop()
            else:
                break
        hull.append((ts[i], bs[i]))
    perp = primitive((-u[1], u[0]))
    uu = Fraction(u[0] * u[0] + u[1] * u[1])
    rays = []
    for (t1, b1), (t2, b2) in zip(hull, hull[1:]):
        c = (b1 - b2) / (t2 - t1)  # tie line is <x, u> = c
        base = (c * u[0] / uu, c * u[1] / uu)
        w = int(t2 - t1) * math.gcd(abs(u[0]), abs(u[1]))
        p_lo = (base_pt[0] + int(t1) * u[0], base_pt[1] + int(t1) * u[1])
        p_hi = (base_pt[0] + int(t2) * u[0], base_pt[1] + int(t2) * u[1])
        dual = (p_lo, p_hi)
        rays.append(CurveRay(base, perp, w, dual))
        rays.append(CurveRay(base, (-perp[0], -perp[1]), w, dual))
    return TropicalCurve(vertices=(), edges=(), rays=tuple(rays),
                         dual_cells=(), newton=convex_hull(pts), line_family=True)


def tropical_curve(h: TropicalPoly) -> TropicalCurve:
    """Curve where the max is attained at least twice, with dual subdivision data.

    Lifts must be exact rationals (use TropicalPoly.rational to snap floats).
    """
    h = h.rational()
    newton = convex_hull(h.support)
    if newton.dim == 0:
        raise DegenerateSupportError("support is a single point; no curve")
    if newton.dim == 1:
        return _line_family_curve(h)

    cells = regular_subdivision(h.support, h.coeffs)
    positions = [_vertex_position(c) for c in cells]

    edge_cells: dict[tuple[Point, Point], list[int]] = {}
    for ci, cell in enumerate(cells):
        for a, b in cell.polygon.edges():
            key = tuple(sorted((a, b)))
            edge_cells.setdefault(key, []).append(ci)
        if cell.polygon.dim < 2:
            raise ArithmeticError("subdivision produced a lower-dimensional cell")

    edges = []
    rays = []
    for (pa, pb), owners in sorted(edge_cells.items()):
        w = lattice_length(pa, pb)
        if len(owners) == 2:
            va, vb = positions[owners[0]], positions[owners[1]]
            span = (vb[0] - va[0], vb[1] - va[1])
            num = (span[0].numerator * span[1].denominator,
                   span[1].numerator * span[0].denominator)
            if num == (0, 0):
                raise ArithmeticError("dual vertices of adjacent cells coincide")
            d = primitive(num)
            edges.append(CurveEdge(va, vb, d, w, (pa, pb)))
        elif len(owners) == 1:
            cell = cells[owners[0]]
            hull = cell.polygon.vertices
            n = len(hull)
            direction = None
            for k in range(n):
                u, v = hull[k], hull[(k + 1) % n]
                if tuple(sorted((u, v))) == (pa, pb):
                    e = (v[0] - u[0], v[1] - u[1])
                    direction = primitive((e[1], -e[0]))
                    break
            rays.append(CurveRay(positions[owners[0]], direction, w, (pa, pb)))
        else:
            raise ArithmeticError("subdivision edge shared by more than two cells")

    return TropicalCurve(vertices=tuple(positions), edges=tuple(edges),
                         rays=tuple(rays),
                         dual_cells=tuple(c.points for c in cells),
                         newton=newton)


def balancing_defect(curve: TropicalCurve):
    """Exact weighted direction sums per vertex; all zero for a valid curve."""
    out = []
    for vi, v in enumerate(curve.vertices):
        acc = [0, 0]
        for e in curve.edges:
            if e.a == v:
                acc[0] += e.weight * e.direction[0]
                acc[1] += e.weight * e.direction[1]
            elif e.b == v:
                acc[0] -= e.weight * e.direction[0]
                acc[1] -= e.weight * e.direction[1]
        for r in curve.rays:
            if r.base == v:
                acc[0] += r.weight * r.direction[0]
                acc[1] += r.weight * r.direction[1]
        out.append((acc[0], acc[1]))
    return out


def limit_directions(curve: TropicalCurve):
    """Deduplicated unit vectors of the ray directions (tentacle directions)."""
    seen = {}
    for r in curve.rays:
        d = r.direction
        norm = math.hypot(d[0], d[1])
        u = (d[0] / norm, d[1] / norm)
        key = (round(u[0], 9), round(u[1], 9))
        seen[key] = u
    return sorted(seen.values(), key=lambda u: math.atan2(u[1], u[0]))


# ---------------------------------------------------------------------------
# stable intersection
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StableIntersectionPoint:
    location: QPoint
    multiplicity: int
    dual_mixed_cell: tuple


class _NonGenericDirection(Exception):
    pass


def _crossings(segs1, segs2, offset: QPoint):
    """Transverse crossings of two carrier lists, the second translated by offset.

    Returns {(key1, key2): (point, multiplicity, dual_cell)}.  Crossings at a
    segment endpoint mean the direction was not generic.
    """
    out = {}
    for b1, d1, t1max, w1, dual1, k1 in segs1:
        for b2, d2, t2max, w2, dual2, k2 in segs2:
            det = cross2(d1, d2)
            if det == 0:
                continue
            rb = (b2[0] + offset[0] - b1[0], b2[1] + offset[1] - b1[1])
            t1 = Fraction(rb[0] * d2[1] - rb[1] * d2[0], det)
            t2 = Fraction(rb[0] * d1[1] - rb[1] * d1[0], det)
            if not (0 <= t1 and (t1max is None or t1 <= t1max)):
                continue
            if not (0 <= t2 and (t2max is None or t2 <= t2max)):
                continue
            if (t1 == 0 or t2 == 0 or t1 == t1max or t2 == t2max):
                raise _NonGenericDirection
            p = (b1[0] + t1 * d1[0], b1[1] + t1 * d1[1])
            m = abs(det) * w1 * w2
            out[(k1, k2)] = (p, m, (dual1, dual2))
    return out


def _stable_for_direction(segs1, segs2, v: QPoint):
    eps_schedule = (Fraction(1, 100), Fraction(1, 1000), Fraction(1, 10000))
    results = []
    for eps in eps_schedule:
        offset = (eps * v[0], eps * v[1])
        results.append(_crossings(segs1, segs2, offset))
    r_mid, r_small = results[1], results[2]
    if set(r_mid) != set(r_small):
        raise _NonGenericDirection
    e_mid, e_small = eps_schedule[1], eps_schedule[2]
    clusters: dict[QPoint, list] = {}
    for key in r_small:
        p_mid, mult, dual = r_mid[key]
        p_small = r_small[key][0]
        scale = e_small / (e_mid - e_small)
        p0 = (p_small[0] + (p_small[0] - p_mid[0]) * scale,
              p_small[1] + (p_small[1] - p_mid[1]) * scale)
        entry = clusters.setdefault(p0, [0, []])
        entry[0] += mult
        entry[1].append(dual)
    return {p: (m, tuple(sorted(duals, key=repr))) for p, (m, duals) in clusters.items()}


def stable_intersection(c1: TropicalCurve, c2: TropicalCurve, seed: int = 0):
    """Exact stable intersection points with multiplicities.

    Translates the second curve by shrinking rational multiples of a generic
    direction and extrapolates each transverse crossing back to epsilon zero.
    Two independent directions must agree exactly.
    """
    segs1 = c1.segments()
    segs2 = c2.segments()
    rng = np.random.default_rng(np.random.SeedSequence([seed, 0x5ab1e]))
    directions = [(Fraction(1), _GOLDEN)]
    for _ in range(6):
        directions.append((Fraction(1),
                           Fraction(int(rng.integers(2**18, 2**20)) * 2 + 1, 2**20)))

    outcomes = []
    for v in directions:
        try:
            outcomes.append(_stable_for_direction(segs1, segs2, v))
        except _NonGenericDirection:
            continue
        if len(outcomes) == 2:
            break
    if len(outcomes) < 2:
        raise NonConvergentIntersectionError(
            "non-convergent stable intersection: no two generic directions found")
    if outcomes[0] != outcomes[1]:
        raise NonConvergentIntersectionError(
            "non-convergent stable intersection: perturbation directions disagree")

    pts = [StableIntersectionPoint(location=p, multiplicity=m, dual_mixed_cell=dual)
           for p, (m, dual) in outcomes[0].items()]
    return sorted(pts, key=lambda s: s.location)


def tropical_bernstein_count(c1: TropicalCurve, c2: TropicalCurve, seed: int = 0) -> int:
    """Total stable-intersection multiplicity; equals the mixed volume of the
    Newton polygons for curves dual to regular subdivisions."""
    return sum(p.multiplicity for p in stable_intersection(c1, c2, seed))
