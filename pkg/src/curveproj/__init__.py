"""Exact decision procedures for projections of rational curves and point lists."""

from .config import Config
from .curves import (PlanarImplicitCurve, PlanarParametricCurve, SpatialParametricCurve, implicitize,
                     is_coplanar_spatial)
from .exactalg import Poly, RationalFunction
from .invariants import classify, numeric_chain, restrict, restrict_pair
from .pointsets import PointList2D, PointList3D, decide_central_points, decide_parallel_points
from .projection import (ProjectionMatrix, ProjectionVerdict, decide_central, decide_parallel,
                         verify_projection)
from .signatures import Verdict, equivalent, implicit_signature, signature

__version__ = "0.1.0"

__all__ = [
    "Config",
    "PlanarImplicitCurve",
    "PlanarParametricCurve",
    "PointList2D",
    "PointList3D",
    "Poly",
    "ProjectionMatrix",
    "ProjectionVerdict",
    "RationalFunction",
    "SpatialParametricCurve",
    "Verdict",
    "classify",
    "decide_central",
    "decide_central_points",
    "decide_parallel",
    "decide_parallel_points",
    "equivalent",
    "implicit_signature",
    "implicitize",
    "is_coplanar_spatial",
    "numeric_chain",
    "restrict",
    "restrict_pair",
    "signature",
    "verify_projection",
]
