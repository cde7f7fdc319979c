"""Intersection of two amoebas: components, vertices, order matrices,
intersection polytopes, the order polytope in Z^4, and the verification
verdicts for the component-count bounds and order-map statements."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .amoeba import AmoebaRaster, Window, order_at, raster_amoeba
from .errors import GenericityError, OnAmoebaError, WindowMismatchError
from .geometry import (Cone2, certify_vertices, convex_hull, float_hull_indices,
                       intersect_sectors, mixed_cones)
from .laurent import LaurentPolynomial

_FOUR_CONN = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)
_EIGHT_CONN = np.ones((3, 3), dtype=bool)


# ---------------------------------------------------------------------------
# marching squares (segment soup, midpoint crossings on the binary grid)
# ---------------------------------------------------------------------------

_MS_EDGES = {  # case index -> list of (edge_in, edge_out); edges 0=S 1=E 2=N 3=W
    1: [(3, 0)], 2: [(0, 1)], 3: [(3, 1)], 4: [(1, 2)], 5: [(3, 2), (1, 0)],
    6: [(0, 2)], 7: [(3, 2)], 8: [(2, 3)], 9: [(2, 0)], 10: [(2, 1), (0, 3)],
    11: [(2, 1)], 12: [(1, 3)], 13: [(1, 0)], 14: [(0, 3)],
}


def boundary_segments(mem: np.ndarray, window: Window) -> np.ndarray:
    """Contour segments of the membership grid at cell-center resolution.

    Returns an (n, 2, 2) array of segments in window coordinates.  Saddle
    blocks use the standard split (treating the block average as low).
    """
    a = mem[:-1, :-1].astype(np.int8)
    b = mem[1:, :-1].astype(np.int8)
    c = mem[1:, 1:].astype(np.int8)
    d = mem[:-1, 1:].astype(np.int8)
    case = a + 2 * b + 4 * c + 8 * d
    xs = window.x_min + (np.arange(mem.shape[0]) + 0.5) * window.hx
    ys = window.y_min + (np.arange(mem.shape[1]) + 0.5) * window.hy
    segs = []
    ii, jj = np.nonzero((case > 0) & (case < 15))
    for i, j in zip(ii, jj):
        x0, x1 = xs[i], xs[i + 1]
        y0, y1 = ys[j], ys[j + 1]
        mid = {0: ((x0 + x1) / 2, y0), 1: (x1, (y0 + y1) / 2),
               2: ((x0 + x1) / 2, y1), 3: (x0, (y0 + y1) / 2)}
        for e_in, e_out in _MS_EDGES[int(case[i, j])]:
            segs.append((mid[e_in], mid[e_out]))
    if not segs:
        return np.zeros((0, 2, 2))
    return np.array(segs)


def _segment_crossings(segs1: np.ndarray, segs2: np.ndarray, cell: float):
    """Pairwise proper intersections of two segment soups (bucketed)."""
    if len(segs1) == 0 or len(segs2) == 0:
        return []
    buckets: dict[tuple[int, int], list[int]] = {}
    inv = 1.0 / (2.0 * cell)
    for idx, s in enumerate(segs2):
        lo = np.minimum(s[0], s[1]) * inv
        key = (int(math.floor(lo[0])), int(math.floor(lo[1])))
        for dx in (0, 1):
            for dy in (0, 1):
                buckets.setdefault((key[0] + dx, key[1] + dy), []).append(idx)
    out = []
    for s1 in segs1:
        lo = np.minimum(s1[0], s1[1]) * inv
        key = (int(math.floor(lo[0])), int(math.floor(lo[1])))
        cands = set()
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                cands.update(buckets.get((key[0] + dx, key[1] + dy), ()))
        p, r = s1[0], s1[1] - s1[0]
        for idx in sorted(cands):
            q, s = segs2[idx][0], segs2[idx][1] - segs2[idx][0]
            denom = r[0] * s[1] - r[1] * s[0]
            if denom == 0:
                continue
            qp = q - p
            t = (qp[0] * s[1] - qp[1] * s[0]) / denom
            u = (qp[0] * r[1] - qp[1] * r[0]) / denom
            if -1e-9 <= t <= 1 + 1e-9 and -1e-9 <= u <= 1 + 1e-9:
                out.append((p[0] + t * r[0], p[1] + t * r[1]))
    return out


# ---------------------------------------------------------------------------
# data records
# ---------------------------------------------------------------------------

@dataclass
class IntersectionVertex:
    location: tuple[float, float]
    order_matrix: tuple | None            # ((u11,u12),(u21,u22)) rows per amoeba
    adjacent_component_ids: tuple         # complement component id per amoeba
    violation: str | None = None
    component_id: int | None = None

    def to_obj(self) -> dict:
        return {"location": [float(self.location[0]), float(self.location[1])],
                "order_matrix": None if self.order_matrix is None
                else [list(r) for r in self.order_matrix],
                "adjacent_component_ids": list(self.adjacent_component_ids),
                "violation": self.violation,
                "component_id": self.component_id}


@dataclass
class ComponentRecord:
    id: int
    cell_count: int
    bounded: bool
    vertex_indices: list = field(default_factory=list)
    polytope: list = field(default_factory=list)          # hull vertex locations
    polytope_vertex_indices: list = field(default_factory=list)
    faces: list = field(default_factory=list)
    spine_hits: list = field(default_factory=list)
    has_interior_cell: bool = False

    def to_obj(self) -> dict:
        return {"id": self.id, "cell_count": self.cell_count,
                "bounded": self.bounded,
                "vertex_indices": list(self.vertex_indices),
                "polytope": [[float(x), float(y)] for x, y in self.polytope],
                "polytope_vertex_indices": list(self.polytope_vertex_indices),
                "faces": self.faces,
                "spine_hits": list(self.spine_hits),
                "has_interior_cell": self.has_interior_cell}


# ---------------------------------------------------------------------------
# stages
# ---------------------------------------------------------------------------

def intersect_rasters(r1: AmoebaRaster, r2: AmoebaRaster):
    """Cellwise AND with 4-connected component labels.

    Returns (membership, component_grid, records); records are ordered by
    label and flag components that touch the window edge as unbounded in
    window.
    """
    if r1.window != r2.window:
        raise WindowMismatchError("rasters live on different windows")
    inter = r1.membership & r2.membership
    comp, ncomp = ndimage.label(inter, structure=_FOUR_CONN)
    records = []
    interior = (inter
                & np.roll(inter, 1, 0) & np.roll(inter, -1, 0)
                & np.roll(inter, 1, 1) & np.roll(inter, -1, 1))
    interior[0, :] = interior[-1, :] = False
    interior[:, 0] = interior[:, -1] = False
    for cid in range(1, ncomp + 1):
        mask = comp == cid
        touches = (mask[0, :].any() or mask[-1, :].any()
                   or mask[:, 0].any() or mask[:, -1].any())
        records.append(ComponentRecord(
            id=cid, cell_count=int(mask.sum()), bounded=not touches,
            has_interior_cell=bool((interior & mask).any())))
    return inter, comp, records


def _refine_vertex(pos, f1, f2, window: Window, angle_samples: int, seed: int,
                   factor: int = 4, patch_cells: int = 6):
    """Re-raster both amoebas at higher resolution around a candidate vertex."""
    half = patch_cells / 2 * max(window.hx, window.hy)
    cell = window.cell_of(*pos)
    if cell is None:
        return pos
    sub = Window(pos[0] - half, pos[0] + half, pos[1] - half, pos[1] + half,
                 patch_cells * factor, patch_cells * factor)
    seed2 = int(np.random.SeedSequence([seed, 1009, cell[0], cell[1]]).generate_state(1)[0])
    try:
        p1 = raster_amoeba(f1, sub, angle_samples, seed2)
        p2 = raster_amoeba(f2, sub, angle_samples, seed2 + 1)
    except Exception:  # noqa: BLE001
        return pos
    s1 = boundary_segments(p1.membership, sub)
    s2 = boundary_segments(p2.membership, sub)
    pts = _segment_crossings(s1, s2, max(sub.hx, sub.hy))
    if not pts:
        return pos
    best = min(pts, key=lambda p: (p[0] - pos[0])**2 + (p[1] - pos[1])**2)
    return (float(best[0]), float(best[1]))


def _adjacent_order(pos, raster: AmoebaRaster, f: LaurentPolynomial,
                    trials: int, seed: int):
    """Order of the unique complement component next to a boundary point.

    Probes two rings around the point, keeps probes whose cells are
    complement cells, and reads their orders.  Returns (order, component_id,
    violation_or_None).
    """
    window = raster.window
    h = max(window.hx, window.hy)
    found: dict[tuple[int, int], int] = {}
    ids: dict[int, int] = {}
    for radius in (2.0 * h, 3.0 * h):
        for k in range(16):
            ang = 2.0 * math.pi * (k + 0.5) / 16
            p = (pos[0] + radius * math.cos(ang), pos[1] + radius * math.sin(ang))
            cell = window.cell_of(*p)
            if cell is None or raster.membership[cell]:
                continue
            cid = int(raster.component_id[cell]) if raster.labeled else 0
            if raster.labeled and cid in raster.component_orders:
                order = raster.component_orders[cid]
            else:
                try:
                    order = order_at(f, p, trials=trials, seed=seed)
                except OnAmoebaError:
                    continue
            found[order] = found.get(order, 0) + 1
            ids[cid] = ids.get(cid, 0) + 1
    if not found:
        return None, None, "vertex swallowed"
    if len(found) > 1:
        return None, None, "genericity condition (3) violated"
    order = next(iter(found))
    best_id = max(sorted(ids), key=lambda c: ids[c])
    return order, best_id, None


def extract_vertices(r1: AmoebaRaster, r2: AmoebaRaster,
                     f1: LaurentPolynomial, f2: LaurentPolynomial,
                     seed: int = 0, angle_samples: int = 256,
                     merge_cells: float = 3.0, refine: bool = True,
                     trials: int = 8, strict: bool = False):
    """Boundary-contour crossings with their order matrices.

    Candidates closer than merge_cells cells are merged; each merged point is
    refined by a local higher-resolution re-raster, then the adjacent
    complement component of each amoeba is identified (it must be unique).
    With strict=True a uniqueness failure raises GenericityError instead of
    being recorded on the vertex.
    """
    if r1.window != r2.window:
        raise WindowMismatchError("rasters live on different windows")
    window = r1.window
    h = max(window.hx, window.hy)
    s1 = boundary_segments(r1.membership, window)
    s2 = boundary_segments(r2.membership, window)
    raw = _segment_crossings(s1, s2, h)
    if not raw:
        return []

    pts = sorted((float(x), float(y)) for x, y in raw)
    parent = list(range(len(pts)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    limit = merge_cells * h
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if pts[j][0] - pts[i][0] > limit:
                break
            if abs(pts[j][1] - pts[i][1]) <= limit:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)

    clusters: dict[int, list] = {}
    for i in range(len(pts)):
        clusters.setdefault(find(i), []).append(pts[i])

    vertices = []
    for root in sorted(clusters):
        group = clusters[root]
        pos = (sum(p[0] for p in group) / len(group),
               sum(p[1] for p in group) / len(group))
        if refine:
            pos = _refine_vertex(pos, f1, f2, window, angle_samples, seed)
        o1, id1, v1err = _adjacent_order(pos, r1, f1, trials, seed)
        o2, id2, v2err = _adjacent_order(pos, r2, f2, trials, seed)
        violation = v1err or v2err
        if violation and strict:
            raise GenericityError(violation)
        matrix = (o1, o2) if violation is None else None
        vertices.append(IntersectionVertex(
            location=pos, order_matrix=matrix,
            adjacent_component_ids=(id1, id2), violation=violation))
    return vertices


def _component_faces(comp_grid, cid, r1: AmoebaRaster, r2: AmoebaRaster):
    """Boundary arcs of one component labeled by (amoeba, complement order)."""
    mask = comp_grid == cid
    pad = np.pad(mask, 1, mode="constant", constant_values=False)
    nbhd = pad[:-2, 1:-1] & pad[2:, 1:-1] & pad[1:-1, :-2] & pad[1:-1, 2:]
    boundary = mask & ~nbhd
    faces = []
    for amoeba_idx, raster in ((1, r1), (2, r2)):
        label_cells: dict[tuple[int, int], np.ndarray] = {}
        mem = raster.membership
        comp_id = raster.component_id
        for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            shifted_mem = np.roll(mem, (-dx, -dy), axis=(0, 1))
            shifted_cid = np.roll(comp_id, (-dx, -dy), axis=(0, 1))
            edge_mask = np.zeros_like(mem)
            sl_x = slice(max(0, -dx), mem.shape[0] - max(0, dx))
            edge_mask[sl_x, max(0, -dy):mem.shape[1] - max(0, dy)] = True
            hit = boundary & ~shifted_mem & edge_mask
            for cidn in np.unique(shifted_cid[hit]):
                order = raster.component_orders.get(int(cidn))
                if order is None:
                    continue
                cells = hit & (shifted_cid == cidn)
                key = (amoeba_idx, order)
                label_cells[key] = label_cells.get(key, np.zeros_like(mem)) | cells
        for (aidx, order), cells in sorted(label_cells.items()):
            _, narcs = ndimage.label(cells, structure=_EIGHT_CONN)
            faces.append({"amoeba": aidx, "order": list(order),
                          "cell_count": int(cells.sum()),
                          "arc_count": int(narcs)})
    return faces


def assign_vertices_to_components(vertices, comp_grid, window: Window,
                                  search_cells: int = 3):
    """Attach each vertex to the component whose cells are nearest."""
    for v in vertices:
        cell = window.cell_of(*v.location)
        if cell is None:
            continue
        best = None
        for dx in range(-search_cells, search_cells + 1):
            for dy in range(-search_cells, search_cells + 1):
                ix, iy = cell[0] + dx, cell[1] + dy
                if not (0 <= ix < window.nx and 0 <= iy < window.ny):
                    continue
                cid = int(comp_grid[ix, iy])
                if cid > 0:
                    d = max(abs(dx), abs(dy))
                    if best is None or d < best[0] or (d == best[0] and cid < best[1]):
                        best = (d, cid)
        if best is not None:
            v.component_id = best[1]


# ---------------------------------------------------------------------------
# verdicts
# ---------------------------------------------------------------------------

def _verdict(passed, detail):
    return {"passed": passed, "detail": detail}


def _row_cones(matrix, newtons, fans):
    """Normal-fan cones of the two order rows, or None when a row is not a
    Newton vertex."""
    cones = []
    for row, newton, fan in zip(matrix, newtons, fans):
        if tuple(row) not in set(newton.vertices) or newton.dim != 2:
            return None
        cone = next(c for c in fan.cones if c.label == tuple(row))
        cones.append(cone)
    return cones


def assemble_components(f1, f2, r1, r2, comp_grid, records, vertices,
                        stable_points, mv, newtons, fans, refinement,
                        degenerate_mode: bool = False):
    """Fill component records (vertices, faces, polytopes, spine hits) and
    evaluate the verification verdicts."""
    window = r1.window
    assign_vertices_to_components(vertices, comp_grid, window)
    by_comp: dict[int, list[int]] = {}
    for vi, v in enumerate(vertices):
        if v.component_id is not None:
            by_comp.setdefault(v.component_id, []).append(vi)

    stable_cells = []
    for si, pt in enumerate(stable_points):
        loc = (float(pt.location[0]), float(pt.location[1]))
        cell = window.cell_of(*loc)
        owner = None
        if cell is not None:
            for dx in range(-2, 3):
                for dy in range(-2, 3):
                    ix, iy = cell[0] + dx, cell[1] + dy
                    if 0 <= ix < window.nx and 0 <= iy < window.ny:
                        cid = int(comp_grid[ix, iy])
                        if cid > 0 and (owner is None or max(abs(dx), abs(dy)) < owner[0]):
                            owner = (max(abs(dx), abs(dy)), cid)
        stable_cells.append(owner[1] if owner else None)

    for rec in records:
        rec.vertex_indices = sorted(by_comp.get(rec.id, []))
        locs = [vertices[i].location for i in rec.vertex_indices]
        hull_local = float_hull_indices(locs) if locs else []
        rec.polytope = [locs[i] for i in hull_local]
        rec.polytope_vertex_indices = [rec.vertex_indices[i] for i in hull_local]
        rec.faces = _component_faces(comp_grid, rec.id, r1, r2)
        rec.spine_hits = sorted(si for si, owner in enumerate(stable_cells)
                                if owner == rec.id)

    bounded = [rec for rec in records if rec.bounded]
    n_comp = len(records)
    n_bounded = len(bounded)
    n_unbounded = n_comp - n_bounded
    n_mixed_cells = len(stable_points)
    note = f" ({n_unbounded} unbounded-in-window component(s) excluded)" if n_unbounded else ""

    verdicts = {}
    verdicts["component_bound_mixed_cells"] = _verdict(
        n_bounded <= n_mixed_cells <= mv,
        f"bounded components {n_bounded} <= mixed cells {n_mixed_cells} <= "
        f"mixed volume {mv}{note}")
    bezout = f1.total_degree() * f2.total_degree()
    verdicts["component_bound_degree_product"] = _verdict(
        n_bounded <= bezout,
        f"bounded components {n_bounded} <= degree product {bezout}{note}")

    missed = [rec.id for rec in records if not rec.spine_hits]
    verdicts["stable_point_in_every_component"] = _verdict(
        not missed,
        "every component contains a stable spine-intersection point" if not missed
        else f"components without a stable point: {missed}")

    inj_bad = []
    for rec in records:
        mats = [vertices[i].order_matrix for i in rec.polytope_vertex_indices]
        mats = [m for m in mats if m is not None]
        if len(mats) != len(set(mats)):
            inj_bad.append(rec.id)
    verdicts["order_matrix_injective_per_component_polytope"] = _verdict(
        not inj_bad,
        "order matrices distinct on every intersection-polytope vertex set"
        if not inj_bad else f"repeated order matrices on components {inj_bad}")

    all_locs = [v.location for v in vertices]
    hull_idx = float_hull_indices(all_locs) if all_locs else []
    hull_mats = [vertices[i].order_matrix for i in hull_idx]
    known = [m for m in hull_mats if m is not None]
    verdicts["order_matrix_injective_on_global_hull"] = _verdict(
        len(known) == len(set(known)),
        f"{len(set(known))} distinct order matrices on {len(known)} hull vertices")

    n_mixed_cones = len(mixed_cones(refinement))
    verdicts["global_hull_vertices_match_mixed_cones"] = _verdict(
        len(hull_idx) == n_mixed_cones,
        f"hull vertices {len(hull_idx)} vs mixed cones {n_mixed_cones}")

    row_fail = []
    cone_fail = []
    for i in hull_idx:
        m = vertices[i].order_matrix
        if m is None:
            row_fail.append(i)
            continue
        cones = _row_cones(m, newtons, fans)
        if cones is None:
            row_fail.append(i)
            continue
        if intersect_sectors(cones[0], cones[1]) is None:
            cone_fail.append(i)
    verdicts["global_hull_vertex_rows_are_newton_vertices"] = _verdict(
        not row_fail,
        "every hull vertex has Newton-vertex order rows" if not row_fail
        else f"hull vertices with non-vertex rows: {row_fail}")
    verdicts["hull_vertex_row_cones_full_dimensional"] = _verdict(
        not cone_fail and not row_fail,
        "normal cones of the order rows intersect full-dimensionally at every "
        "hull vertex" if not (cone_fail or row_fail)
        else f"hull vertices failing the cone check: {sorted(set(row_fail + cone_fail))}")

    two_fail = []
    for rec in bounded:
        for amoeba_idx in (1, 2):
            orders = {tuple(fc["order"]) for fc in rec.faces if fc["amoeba"] == amoeba_idx}
            if len(orders) < 2:
                two_fail.append((rec.id, amoeba_idx))
    verdicts["two_complement_orders_per_amoeba"] = _verdict(
        not two_fail,
        "each amoeba contributes at least two complement components to every "
        "bounded component closure" if not two_fail
        else f"failures (component, amoeba): {two_fail}")

    if degenerate_mode:
        verdicts["components_have_interior"] = _verdict(
            None, "skipped: degenerate mode (measure-zero membership)")
    else:
        thin = [rec.id for rec in records if not rec.has_interior_cell]
        verdicts["components_have_interior"] = _verdict(
            not thin,
            "every component contains an interior cell" if not thin
            else f"components without interior cells: {thin}")

    hull_info = {
        "vertex_indices": list(hull_idx),
        "locations": [[float(all_locs[i][0]), float(all_locs[i][1])] for i in hull_idx],
        "order_matrices": [None if m is None else [list(r) for r in m]
                           for m in hull_mats],
        "mixed_cone_count": n_mixed_cones,
    }
    return verdicts, hull_info


def order_polytope_analysis(vertices, hull_info, newtons, fans, n_mixed_cones):
    """Order matrices in Z^4: vertex certification, product containment, and
    the shared-vertex count against the mixed cones."""
    mats = sorted({v.order_matrix for v in vertices if v.order_matrix is not None})
    flat = [tuple(m[0]) + tuple(m[1]) for m in mats]
    vertex_flags = certify_vertices(flat) if flat else []
    newton_vertex_sets = [set(n.vertices) for n in newtons]

    def is_product_vertex(m):
        return all(tuple(row) in newton_vertex_sets[i] for i, row in enumerate(m))

    containment_fail = [m for m in mats
                        if not all(newtons[i].contains(tuple(row))
                                   for i, row in enumerate(m))]
    verdicts = {}
    verdicts["order_matrices_inside_newton_product"] = _verdict(
        not containment_fail,
        "every order matrix lies in the product of the Newton polygons"
        if not containment_fail else f"outside matrices: {containment_fail}")

    hull_mats = [(tuple(m[0]), tuple(m[1]))
                 for m in hull_info["order_matrices"] if m is not None]
    mat_index = {m: k for k, m in enumerate(mats)}
    b1_fail = []
    for m in hull_mats:
        k = mat_index.get(m)
        if k is None or not vertex_flags[k] or not is_product_vertex(m):
            b1_fail.append(m)
    verdicts["hull_matrices_are_order_polytope_and_product_vertices"] = _verdict(
        not b1_fail,
        "every global-hull vertex matrix is a vertex of the order polytope and "
        "of the product" if not b1_fail else f"failing matrices: {b1_fail}")

    shared = [m for k, m in enumerate(mats)
              if vertex_flags[k] and is_product_vertex(m)]
    verdicts["shared_vertices_at_least_mixed_cones"] = _verdict(
        len(shared) >= n_mixed_cones,
        f"shared vertices {len(shared)} >= mixed cones {n_mixed_cones}")

    cone_fail = []
    for m in hull_mats:
        cones = _row_cones(m, newtons, fans)
        if cones is None or intersect_sectors(cones[0], cones[1]) is None:
            cone_fail.append(m)
    verdicts["hull_matrix_row_cones_full_dimensional"] = _verdict(
        not cone_fail,
        "row normal cones intersect full-dimensionally for every hull matrix"
        if not cone_fail else f"failing matrices: {cone_fail}")

    data = {
        "matrices": [[list(m[0]), list(m[1])] for m in mats],
        "vertex_flags": [bool(b) for b in vertex_flags],
        "order_polytope_vertex_count": int(sum(vertex_flags)),
        "product_vertex_count": len(newton_vertex_sets[0]) * len(newton_vertex_sets[1]),
        "shared_vertex_count": len(shared),
        "mixed_cone_count": n_mixed_cones,
        "verdicts": verdicts,
    }
    return data


def genericity_screen(r1: AmoebaRaster, r2: AmoebaRaster, vertices,
                      max_overlap_cells: int = 5):
    """Raster-scale screens for the genericity conditions (screen, not certifier)."""
    out = {"irreducibility": "not checked"}
    thin = []
    for idx, r in ((1, r1), (2, r2)):
        if r.is_thin():
            thin.append(idx)
    out["degenerate_thin_amoebas"] = thin

    overlap = r1.boundary_cells() & r2.boundary_cells()
    labels, n = ndimage.label(overlap, structure=_EIGHT_CONN)
    if n:
        sizes = ndimage.sum_labels(overlap.astype(np.int64), labels,
                                   index=range(1, n + 1))
        longest = int(max(sizes))
    else:
        longest = 0
    out["boundary_intersection_finite"] = _verdict(
        longest <= max_overlap_cells,
        f"longest shared boundary stretch: {longest} cells (limit {max_overlap_cells})")

    bad = [i for i, v in enumerate(vertices) if v.violation]
    out["unique_adjacent_component"] = _verdict(
        not bad,
        "every vertex lies in the closure of a unique complement component per "
        "amoeba" if not bad
        else f"vertices with violations: {[(i, vertices[i].violation) for i in bad]}")
    return out
