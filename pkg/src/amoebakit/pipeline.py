"""Scenario-driven orchestration: parse a scenario, run the requested mode,
produce a deterministic JSON report and an SVG figure."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import geometry, intersection, kernels, spine, svg, tropical
from .amoeba import AmoebaRaster, Window, label_components, raster_amoeba
from .errors import AmoebakitError
from .geometry import (common_refinement, convex_hull, minkowski_sum,
                       mixed_cones, mixed_volume, normal_fan,
                       normalized_volume)
from .laurent import LaurentPolynomial
from .tropical import (TropicalPoly, snap_to_rational, stable_intersection,
                       tropical_curve)

MODES = ("newton", "amoeba", "spine", "tropical", "intersect", "verify")

_COLORS = ("#1f77b4", "#d62728")


class ScenarioError(ValueError):
    """Malformed scenario input."""


@dataclass
class PipelineResult:
    report: dict
    svg: str
    exit_code: int

    def report_json(self) -> str:
        return json.dumps(self.report, sort_keys=True, indent=2) + "\n"


def normalize_scenario(obj: dict) -> dict:
    if not isinstance(obj, dict):
        raise ScenarioError("scenario must be a JSON object")
    mode = obj.get("mode", "verify")
    if mode not in MODES:
        raise ScenarioError(f"unknown mode {mode!r}; expected one of {MODES}")
    polys_obj = obj.get("polynomials")
    if not isinstance(polys_obj, list) or not polys_obj:
        raise ScenarioError("scenario needs a non-empty 'polynomials' list")
    try:
        polys = [LaurentPolynomial.from_obj(p) for p in polys_obj]
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc
    need_two = mode in ("intersect", "verify")
    if need_two and len(polys) != 2:
        raise ScenarioError(f"mode {mode!r} needs exactly 2 polynomials, got {len(polys)}")
    if mode in ("amoeba", "spine") and len(polys) != 1:
        raise ScenarioError(f"mode {mode!r} needs exactly 1 polynomial, got {len(polys)}")

    out = {
        "mode": mode,
        "polynomials": polys,
        "window": obj.get("window", "auto"),
        "resolution": int(obj.get("resolution", 400)),
        "angle_samples": int(obj.get("angle_samples", 256)),
        "quad_n": int(obj.get("quad_n", 256)),
        "seed": int(obj.get("seed", 0)),
        "epsilon_list": obj.get("epsilon_list"),
        "degenerate_mode": bool(obj.get("degenerate_mode", False)),
    }
    if out["resolution"] < 16:
        raise ScenarioError("resolution must be at least 16")
    if out["epsilon_list"] is not None:
        out["epsilon_list"] = [float(e) for e in out["epsilon_list"]]
    return out


def _poly_seed(seed: int, index: int) -> int:
    return int(np.random.SeedSequence([seed, 211, index]).generate_state(1)[0])


def _proxy_curve(f: LaurentPolynomial):
    """Tropical curve of the coefficient-log lift (window auto-sizing proxy)."""
    support = f.support
    lifts = tuple(snap_to_rational(math.log(abs(f.terms[a]))) for a in support)
    if len(support) < 2:
        return None
    return tropical_curve(TropicalPoly(support, lifts))


def resolve_window(scenario: dict) -> Window:
    w = scenario["window"]
    res = scenario["resolution"]
    if isinstance(w, dict):
        try:
            return Window(float(w["x_min"]), float(w["x_max"]),
                          float(w["y_min"]), float(w["y_max"]),
                          int(w.get("nx", res)), int(w.get("ny", res)))
        except KeyError as exc:
            raise ScenarioError(f"window is missing field {exc}") from exc
    if w != "auto":
        raise ScenarioError("window must be an object with bounds or 'auto'")
    pts = []
    curves = []
    for f in scenario["polynomials"]:
        c = _proxy_curve(f)
        if c is not None:
            curves.append(c)
            pts += [(float(a), float(b)) for a, b in c.vertices]
            pts += [(float(r.base[0]), float(r.base[1])) for r in c.rays]
    if len(curves) == 2:
        try:
            for p in stable_intersection(curves[0], curves[1], scenario["seed"]):
                pts.append((float(p.location[0]), float(p.location[1])))
        except AmoebakitError:
            pass
    if not pts:
        return Window.square(-3.0, 3.0, res)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    lo = min(min(xs), min(ys)) - 2.0
    hi = max(max(xs), max(ys)) + 2.0
    return Window.square(lo, hi, res)


# ---------------------------------------------------------------------------
# stage helpers
# ---------------------------------------------------------------------------

def _newton_block(polys) -> dict:
    newtons = [convex_hull(f.support) for f in polys]
    block = {
        "polytopes": [[list(v) for v in n.vertices] for n in newtons],
        "dimensions": [n.dim for n in newtons],
        "normalized_volumes": [normalized_volume(n) for n in newtons],
        "total_degrees": [f.total_degree() for f in polys],
    }
    if len(polys) == 2:
        mink = minkowski_sum(newtons[0], newtons[1])
        block["minkowski_vertices"] = [list(v) for v in mink.vertices]
        block["mixed_volume"] = mixed_volume(newtons[0], newtons[1])
        block["bezout_product"] = polys[0].total_degree() * polys[1].total_degree()
        if all(n.dim == 2 for n in newtons):
            fans = [normal_fan(n) for n in newtons]
            refinement = common_refinement(fans[0], fans[1])
            mixed = mixed_cones(refinement)
            block["refinement_cone_count"] = len(refinement)
            block["mixed_cone_count"] = len(mixed)
            block["mixed_cones"] = [
                {"ray1": list(c.ray1), "ray2": list(c.ray2),
                 "source_vertices": [list(c.label[0]), list(c.label[1])]}
                for c in mixed]
    return block


def _raster_stage(scenario, window, workers):
    rasters = []
    for i, f in enumerate(scenario["polynomials"]):
        s = _poly_seed(scenario["seed"], i)
        r = raster_amoeba(f, window, scenario["angle_samples"], seed=s,
                          workers=workers)
        label_components(r, f, seed=s)
        rasters.append(r)
    return rasters


def _spine_stage(scenario, rasters):
    spines = []
    for i, (f, r) in enumerate(zip(scenario["polynomials"], rasters)):
        s = _poly_seed(scenario["seed"], i)
        spines.append(spine.build_spine(f, r, quad_n=scenario["quad_n"], seed=s))
    return spines


def _stable_block(stable_pts) -> dict:
    return {
        "points": [{"location": [float(p.location[0]), float(p.location[1])],
                    "multiplicity": p.multiplicity,
                    "mixed_cell": [[list(q) for q in pair] for pair in p.dual_mixed_cell]}
                   for p in stable_pts],
        "distinct_points": len(stable_pts),
        "total_multiplicity": int(sum(p.multiplicity for p in stable_pts)),
    }


def _collect_exit(verdict_groups) -> int:
    for group in verdict_groups:
        for v in group.values():
            if isinstance(v, dict) and "passed" in v and v["passed"] is False:
                return 2
    return 0


# ---------------------------------------------------------------------------
# modes
# ---------------------------------------------------------------------------

def run_scenario(scenario_obj: dict, workers: int = 1) -> PipelineResult:
    scenario = normalize_scenario(scenario_obj)
    mode = scenario["mode"]
    report = {
        "schema": "amoebakit.report/1",
        "backend": kernels.backend_name(),
        "mode": mode,
        "seed": scenario["seed"],
        "resolution": scenario["resolution"],
        "angle_samples": scenario["angle_samples"],
        "quad_n": scenario["quad_n"],
        "degenerate_mode": scenario["degenerate_mode"],
        "polynomials": [f.to_obj() for f in scenario["polynomials"]],
        "newton": _newton_block(scenario["polynomials"]),
    }

    if mode == "newton":
        return PipelineResult(report, _newton_svg(scenario), 0)

    if mode == "tropical":
        curves = [_proxy_curve(f) for f in scenario["polynomials"]]
        if any(c is None for c in curves):
            raise ScenarioError("tropical mode needs polynomials with at least two terms")
        window = resolve_window(scenario)
        report["window"] = window.to_obj()
        report["curves"] = [spine.curve_to_obj(c) for c in curves]
        verdicts = {}
        if len(curves) == 2:
            pts = stable_intersection(curves[0], curves[1], scenario["seed"])
            report["stable_intersection"] = _stable_block(pts)
            mv = report["newton"].get("mixed_volume")
            total = report["stable_intersection"]["total_multiplicity"]
            verdicts["stable_total_equals_mixed_volume"] = {
                "passed": total == mv,
                "detail": f"total multiplicity {total} vs mixed volume {mv}"}
        report["verdicts"] = verdicts
        canvas = svg.SvgCanvas(window)
        for c, color in zip(curves, _COLORS):
            svg.draw_curve(canvas, c, color)
        return PipelineResult(report, canvas.document(), _collect_exit([verdicts]))

    window = resolve_window(scenario)
    report["window"] = window.to_obj()
    rasters = _raster_stage(scenario, window, workers)
    report["amoebas"] = [r.to_obj() for r in rasters]

    if mode == "amoeba":
        canvas = svg.SvgCanvas(window)
        svg.draw_raster(canvas, rasters[0], _COLORS[0])
        return PipelineResult(report, canvas.document(), 0)

    if mode == "spine":
        sp = _spine_stage(scenario, rasters)[0]
        report["spines"] = [sp.to_obj()]
        canvas = svg.SvgCanvas(window)
        svg.draw_raster(canvas, rasters[0], _COLORS[0])
        svg.draw_curve(canvas, sp.curve, "#2ca02c", dashed=True)
        return PipelineResult(report, canvas.document(), 0)

    # intersect / verify
    polys = scenario["polynomials"]
    spines = _spine_stage(scenario, rasters)
    report["spines"] = [s.to_obj() for s in spines]
    stable_pts = stable_intersection(spines[0].curve, spines[1].curve,
                                     scenario["seed"])
    report["stable_intersection"] = _stable_block(stable_pts)

    inter, comp_grid, records = intersection.intersect_rasters(rasters[0], rasters[1])
    vertices = intersection.extract_vertices(
        rasters[0], rasters[1], polys[0], polys[1], seed=scenario["seed"],
        angle_samples=scenario["angle_samples"])

    newtons = [convex_hull(f.support) for f in polys]
    fans = [normal_fan(n) if n.dim == 2 else None for n in newtons]
    verdicts = {}
    hull_info = {"vertex_indices": [], "locations": [], "order_matrices": [],
                 "mixed_cone_count": 0}
    order_block = None
    if all(fan is not None for fan in fans):
        refinement = common_refinement(fans[0], fans[1])
        mv = report["newton"]["mixed_volume"]
        verdicts, hull_info = intersection.assemble_components(
            polys[0], polys[1], rasters[0], rasters[1], comp_grid, records,
            vertices, stable_pts, mv, newtons, fans, refinement,
            degenerate_mode=scenario["degenerate_mode"])
        order_block = intersection.order_polytope_analysis(
            vertices, hull_info, newtons, fans, hull_info["mixed_cone_count"])
    screens = intersection.genericity_screen(rasters[0], rasters[1], vertices)

    mv = report["newton"].get("mixed_volume")
    total = report["stable_intersection"]["total_multiplicity"]
    verdicts["stable_total_equals_mixed_volume"] = {
        "passed": total == mv,
        "detail": f"total multiplicity {total} vs mixed volume {mv}"}

    report["intersection"] = {
        "component_count": len(records),
        "bounded_component_count": sum(1 for r in records if r.bounded),
        "components": [r.to_obj() for r in records],
        "vertices": [v.to_obj() for v in vertices],
        "vertex_count": len(vertices),
        "global_hull": hull_info,
    }
    report["verdicts"] = verdicts
    if order_block is not None:
        report["order_polytope"] = order_block
    report["genericity"] = screens

    if scenario["epsilon_list"]:
        report["retraction"] = spine.retract_experiment(spines, rasters,
                                                        scenario["epsilon_list"])

    canvas = svg.SvgCanvas(window)
    svg.draw_raster(canvas, rasters[0], _COLORS[0], opacity=0.45)
    svg.draw_raster(canvas, rasters[1], _COLORS[1], opacity=0.45)
    svg.draw_mask(canvas, inter, window, "#6a0dad", opacity=0.8)
    for s, color in zip(spines, ("#17becf", "#bcbd22")):
        svg.draw_curve(canvas, s.curve, color, width=1.5, dashed=True)
    for rec in records:
        if len(rec.polytope) >= 2:
            canvas.polygon(rec.polytope, "#2ca02c")
    for v in vertices:
        canvas.dot(v.location, "black")
    doc = canvas.document()

    if mode == "intersect":
        return PipelineResult(report, doc, 0)

    groups = [verdicts]
    if order_block is not None:
        groups.append(order_block["verdicts"])
    groups.append({k: v for k, v in screens.items() if isinstance(v, dict)})
    return PipelineResult(report, doc, _collect_exit(groups))


def _newton_svg(scenario) -> str:
    newtons = [convex_hull(f.support) for f in scenario["polynomials"]]
    span = 1
    for n in newtons:
        for v in n.vertices:
            span = max(span, abs(v[0]), abs(v[1]))
    window = Window.square(-span - 1, span + 1, 64)
    canvas = svg.SvgCanvas(window)
    for n, color in zip(newtons, _COLORS):
        if len(n.vertices) >= 2:
            canvas.polygon([(float(x), float(y)) for x, y in n.vertices], color)
        else:
            canvas.dot((float(n.vertices[0][0]), float(n.vertices[0][1])), color)
    return canvas.document()
