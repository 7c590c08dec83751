"""Plane curves: flexes, odd-order tangents and per-point real rank."""

from .classify import INCONCLUSIVE, RANK1, RANK2, RANK3, PointClass, classify_point, line_real_intersections
from .curve import PlaneCurve, hessian, tangency_order
from .flexes import FlexRecord, odd_tangent_set, real_flexes
from .region import Chart, RegionInvariantError, RegionMap, region_map, render_svg

__all__ = [
    "PlaneCurve", "hessian", "tangency_order",
    "FlexRecord", "real_flexes", "odd_tangent_set",
    "PointClass", "classify_point", "line_real_intersections",
    "RANK1", "RANK2", "RANK3", "INCONCLUSIVE",
    "Chart", "RegionMap", "RegionInvariantError", "region_map", "render_svg",
]
