"""Amoebas of bivariate Laurent polynomials and their intersections.

Membership rasters via fiber root solving, the order map by argument-principle
root counting, Ronkin-coefficient spines, exact tropical stable intersections,
and the combinatorial analysis of pairwise amoeba intersections.
"""

from .amoeba import (AmoebaRaster, Window, label_components, order_at,
                     raster_amoeba, ronkin, ronkin_coefficient, ronkin_gradient)
from .geometry import (LatticePolytope, certify_vertices, common_refinement,
                       convex_hull, minkowski_sum, mixed_cones, mixed_volume,
                       normal_fan, normalized_volume)
from .kernels import backend_name
from .laurent import LaurentPolynomial, RealPair, UnivariatePoly
from .pipeline import run_scenario
from .spine import SpineData, build_spine, retract_experiment
from .tropical import (StableIntersectionPoint, TropicalCurve, TropicalPoly,
                       limit_directions, stable_intersection, tropical_curve,
                       tropical_bernstein_count, tropical_eval)

__version__ = "0.1.0"

__all__ = [
    "AmoebaRaster", "LatticePolytope", "LaurentPolynomial", "RealPair",
    "SpineData", "StableIntersectionPoint", "TropicalCurve", "TropicalPoly",
    "UnivariatePoly", "Window", "backend_name", "build_spine",
    "certify_vertices", "common_refinement", "convex_hull", "label_components",
    "limit_directions", "minkowski_sum", "mixed_cones", "mixed_volume",
    "normal_fan", "normalized_volume", "order_at", "raster_amoeba",
    "retract_experiment", "ronkin", "ronkin_coefficient", "ronkin_gradient",
    "run_scenario", "stable_intersection", "tropical_bernstein_count",
    "tropical_curve", "tropical_eval",
]
