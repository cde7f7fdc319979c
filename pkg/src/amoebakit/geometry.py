"""Exact convex geometry over the integers and rationals.

Everything here avoids floating point: planar hulls, Minkowski sums, lattice
normalized volumes and mixed volumes, normal fans with their common
refinements and mixed cones, and vertex certification for point sets in Z^4
via a rational simplex feasibility test.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction

Point = tuple[int, int]


def cross(o, a, b) -> int:
    """Orientation of the triple (o, a, b); positive for a counterclockwise turn."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def cross2(u, v):
    return u[0] * v[1] - u[1] * v[0]


def primitive(v: Point) -> Point:
    if v == (0, 0):
        raise ValueError("the zero vector has no primitive representative")
    g = math.gcd(abs(v[0]), abs(v[1]))
    return (v[0] // g, v[1] // g)


def lattice_length(a: Point, b: Point) -> int:
    """Number of primitive steps from a to b."""
    return math.gcd(abs(b[0] - a[0]), abs(b[1] - a[1]))


# ---------------------------------------------------------------------------
# polytopes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LatticePolytope:
    """Convex lattice polygon with canonical counterclockwise vertex order.

    Degenerate hulls are kept with an explicit dimension flag: a single point
    has dim 0, a segment dim 1 (stored as its two endpoints).
    """

    vertices: tuple[Point, ...]
    dim: int

    def __post_init__(self):
        if not self.vertices:
            raise ValueError("empty polytope")

    @property
    def is_full_dim(self) -> bool:
        return self.dim == 2

    def contains(self, p: Point) -> bool:
        """Exact membership test for a lattice (or rational) point."""
        v = self.vertices
        if self.dim == 0:
            return tuple(p) == v[0]
        if self.dim == 1:
            a, b = v
            if cross(a, b, p) != 0:
                return False
            lo0, hi0 = sorted((a[0], b[0]))
            lo1, hi1 = sorted((a[1], b[1]))
            return lo0 <= p[0] <= hi0 and lo1 <= p[1] <= hi1
        n = len(v)
        return all(cross(v[k], v[(k + 1) % n], p) >= 0 for k in range(n))

    def edges(self) -> list[tuple[Point, Point]]:
        v = self.vertices
        if self.dim < 2:
            return []
        return [(v[k], v[(k + 1) % len(v)]) for k in range(len(v))]

    def translate(self, t: Point) -> "LatticePolytope":
        return LatticePolytope(tuple((x + t[0], y + t[1]) for x, y in self.vertices), self.dim)


def convex_hull(points) -> LatticePolytope:
    """Strict planar hull; collinear interior points are dropped.

    The vertex list is counterclockwise starting at the lexicographic minimum.
    """
    pts = sorted({(int(x), int(y)) for x, y in points})
    if not pts:
        raise ValueError("convex_hull of an empty point set")
    if len(pts) == 1:
        return LatticePolytope((pts[0],), 0)
    if all(cross(pts[0], pts[1], p) == 0 for p in pts[2:]):
        return LatticePolytope((pts[0], pts[-1]), 1)

    def half(chain_points):
        out = []
        for p in chain_points:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    verts = lower[:-1] + upper[:-1]
    return LatticePolytope(tuple(verts), 2)


def minkowski_sum(p: LatticePolytope, q: LatticePolytope) -> LatticePolytope:
    sums = [(a[0] + b[0], a[1] + b[1]) for a in p.vertices for b in q.vertices]
    return convex_hull(sums)


def normalized_volume(p: LatticePolytope) -> int:
    """Twice the Euclidean area (the lattice volume with unit standard simplex)."""
    if p.dim < 2:
        return 0
    v = p.vertices
    acc = 0
    for k in range(len(v)):
        a, b = v[k], v[(k + 1) % len(v)]
        acc += a[0] * b[1] - b[0] * a[1]
    return abs(acc)


def mixed_volume(p: LatticePolytope, q: LatticePolytope) -> int:
    """Inclusion-exclusion mixed volume for a pair of lattice polygons.

    Always a nonnegative integer; this is the generic root count for a
    system with these Newton polygons.
    """
    s = minkowski_sum(p, q)
    diff = normalized_volume(s) - normalized_volume(p) - normalized_volume(q)
    if diff < 0 or diff % 2:
        raise ArithmeticError(f"mixed volume inconsistency: {diff}")
    return diff // 2


# ---------------------------------------------------------------------------
# cones and fans
# ---------------------------------------------------------------------------

def _angular_half(v: Point) -> int:
    return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1


def _ray_cmp(u: Point, v: Point) -> int:
    """Counterclockwise comparison starting from direction (1, 0)."""
    hu, hv = _angular_half(u), _angular_half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    c = cross2(u, v)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


_RAY_KEY = functools.cmp_to_key(_ray_cmp)


@dataclass(frozen=True)
class Cone2:
    """Closed planar cone spanned counterclockwise from ray1 to ray2.

    Sectors are strictly narrower than a half-plane (cross(ray1, ray2) > 0).
    Half-plane and full-plane degenerations carry a kind flag and are only
    produced for lower-dimensional polytopes.
    """

    ray1: Point
    ray2: Point
    kind: str = "sector"
    label: object = None
    parents: tuple = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "ray1", primitive(self.ray1))
        object.__setattr__(self, "ray2", primitive(self.ray2))
        if self.kind == "sector" and cross2(self.ray1, self.ray2) <= 0:
            raise ValueError("sector rays must span less than a half-plane, counterclockwise")

    def __eq__(self, other):
        return (isinstance(other, Cone2) and self.kind == other.kind
                and self.ray1 == other.ray1 and self.ray2 == other.ray2)

    def __hash__(self):
        return hash((self.kind, self.ray1, self.ray2))

    def contains_ray(self, v: Point) -> bool:
        if self.kind == "full":
            return True
        if self.kind == "half":
            return cross2(self.ray1, v) >= 0
        return cross2(self.ray1, v) >= 0 and cross2(v, self.ray2) >= 0

    def same_rays(self, other: "Cone2") -> bool:
        return self.ray1 == other.ray1 and self.ray2 == other.ray2

    def width_degrees(self) -> float:
        a1 = math.atan2(self.ray1[1], self.ray1[0])
        a2 = math.atan2(self.ray2[1], self.ray2[0])
        w = math.degrees(a2 - a1) % 360.0
        return 360.0 if self.kind == "full" else (w if w else 360.0)


def intersect_sectors(a: Cone2, b: Cone2) -> Cone2 | None:
    """Full-dimensional intersection of two sectors, or None.

    Valid because every sector is narrower than a half-plane, so the
    intersection is a single (possibly empty or ray-only) sector.
    """
    if a.kind != "sector" or b.kind != "sector":
        raise ValueError("only sector cones can be intersected")
    start = a.ray1 if b.contains_ray(a.ray1) else (b.ray1 if a.contains_ray(b.ray1) else None)
    end = a.ray2 if b.contains_ray(a.ray2) else (b.ray2 if a.contains_ray(b.ray2) else None)
    if start is None or end is None:
        return None
    if cross2(start, end) <= 0:
        return None
    mid = (start[0] + end[0], start[1] + end[1])
    if not (a.contains_ray(mid) and b.contains_ray(mid)):
        return None
    return Cone2(start, end)


@dataclass(frozen=True)
class Fan2:
    """Complete fan of full-dimensional sectors, sorted counterclockwise.

    Each cone carries a provenance label (the face of the source polytope for
    normal fans, or the pair of source labels for refinements).
    """

    cones: tuple[Cone2, ...]

    def __post_init__(self):
        cones = tuple(sorted(self.cones, key=lambda c: _RAY_KEY(c.ray1)))
        object.__setattr__(self, "cones", cones)
        n = len(cones)
        for k in range(n):
            nxt = cones[(k + 1) % n]
            if cones[k].ray2 != nxt.ray1:
                raise ValueError("fan is not complete: cones do not tile the plane")

    def __len__(self):
        return len(self.cones)

    def rays(self) -> list[Point]:
        return [c.ray1 for c in self.cones]


def normal_fan(p: LatticePolytope) -> Fan2:
    """One maximal cone per vertex, spanned by the incident outward edge normals."""
    if p.dim != 2:
        raise ValueError("normal fan requires a full-dimensional polygon")
    v = p.vertices
    n = len(v)
    cones = []
    for k in range(n):
        prev_edge = (v[k][0] - v[k - 1][0], v[k][1] - v[k - 1][1])
        next_edge = (v[(k + 1) % n][0] - v[k][0], v[(k + 1) % n][1] - v[k][1])
        n_in = primitive((prev_edge[1], -prev_edge[0]))
        n_out = primitive((next_edge[1], -next_edge[0]))
        cones.append(Cone2(n_in, n_out, label=v[k]))
    return Fan2(tuple(cones))


def common_refinement(f1: Fan2, f2: Fan2) -> Fan2:
    """All full-dimensional pairwise intersections, labeled with their sources.

    The result equals the normal fan of the Minkowski sum of the source
    polytopes.
    """
    out = []
    for c1 in f1.cones:
        for c2 in f2.cones:
            c = intersect_sectors(c1, c2)
            if c is not None:
                out.append(Cone2(c.ray1, c.ray2, label=(c1.label, c2.label),
                                 parents=(c1, c2)))
    return Fan2(tuple(out))


def mixed_cones(fan: Fan2) -> list[Cone2]:
    """Cones of a refinement that strictly refine both of their parents."""
    out = []
    for c in fan.cones:
        if len(c.parents) != 2:
            raise ValueError("mixed cones need provenance; build the fan with common_refinement")
        p1, p2 = c.parents
        if not c.same_rays(p1) and not c.same_rays(p2):
            out.append(c)
    return out


# ---------------------------------------------------------------------------
# exact vertex certification in Z^d (d = 4 for order polytopes)
# ---------------------------------------------------------------------------

def point_in_hull(p, points) -> bool:
    """Exact test: is p a convex combination of the given points?

    Rational phase-1 simplex on the convex-combination system; no floating
    point is involved.
    """
    pts = [tuple(int(x) for x in q) for q in points]
    p = tuple(int(x) for x in p)
    m = len(pts)
    if m == 0:
        return False
    d = len(p)
    rows = d + 1
    a = [[Fraction(q[k]) for q in pts] for k in range(d)]
    a.append([Fraction(1)] * m)
    b = [Fraction(x) for x in p] + [Fraction(1)]
    for r in range(rows):
        if b[r] < 0:
            a[r] = [-x for x in a[r]]
            b[r] = -b[r]

    ncols = m + rows
    tab = [a[r][:] + [Fraction(1) if c == r else Fraction(0) for c in range(rows)] + [b[r]]
           for r in range(rows)]
    basis = list(range(m, m + rows))
    cost = [Fraction(0)] * m + [Fraction(1)] * rows

    for _ in range(10000):
        reduced = []
        for j in range(ncols):
            rc = sum(cost[basis[r]] * tab[r][j] for r in range(rows)) - cost[j]
            reduced.append(rc)
        entering = next((j for j in range(ncols) if reduced[j] > 0), None)
        if entering is None:
            break
        ratio = None
        pivot_row = None
        for r in range(rows):
            if tab[r][entering] > 0:
                rr = tab[r][-1] / tab[r][entering]
                if ratio is None or rr < ratio or (rr == ratio and basis[r] < basis[pivot_row]):
                    ratio = rr
                    pivot_row = r
        if pivot_row is None:
            raise ArithmeticError("unbounded phase-1 simplex; inconsistent system")
        piv = tab[pivot_row][entering]
        tab[pivot_row] = [x / piv for x in tab[pivot_row]]
        for r in range(rows):
            if r != pivot_row and tab[r][entering] != 0:
                f = tab[r][entering]
                tab[r] = [x - f * y for x, y in zip(tab[r], tab[pivot_row])]
        basis[pivot_row] = entering
    else:
        raise ArithmeticError("simplex did not terminate")

    objective = sum(cost[basis[r]] * tab[r][-1] for r in range(rows))
    return objective == 0


def certify_vertices(points) -> list[bool]:
    """Flag per point: True iff the point is not in the hull of the others."""
    pts = [tuple(int(x) for x in q) for q in points]
    if not pts:
        raise ValueError("certify_vertices of an empty point set")
    out = []
    for i, p in enumerate(pts):
        others = pts[:i] + pts[i + 1:]
        out.append(not point_in_hull(p, others))
    return out


# ---------------------------------------------------------------------------
# float hulls (raster-derived point sets)
# ---------------------------------------------------------------------------

def float_hull_indices(points, eps: float = 1e-9) -> list[int]:
    """Indices of strict hull vertices of a float point set, counterclockwise.

    Points collinear with a hull edge (within eps relative to the point
    spread) are not reported as vertices.
    """
    n = len(points)
    if n == 0:
        return []
    idx = sorted(range(n), key=lambda i: (points[i][0], points[i][1], i))
    uniq = []
    scale = 1.0
    if n > 1:
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        scale = max(max(xs) - min(xs), max(ys) - min(ys), 1e-30)
    for i in idx:
        if uniq and abs(points[i][0] - points[uniq[-1]][0]) <= eps * scale \
                and abs(points[i][1] - points[uniq[-1]][1]) <= eps * scale:
            continue
        uniq.append(i)
    if len(uniq) == 1:
        return uniq
    tol = eps * scale * scale

    def turn(i, j, k):
        return ((points[j][0] - points[i][0]) * (points[k][1] - points[i][1])
                - (points[j][1] - points[i][1]) * (points[k][0] - points[i][0]))

    def half(seq):
        out = []
        for i in seq:
            while len(out) >= 2 and turn(out[-2], out[-1], i) <= tol:
                out.pop()
            out.append(i)
        return out

    lower = half(uniq)
    upper = half(reversed(uniq))
    if len(lower) <= 1:
        return lower
    return lower[:-1] + upper[:-1]
