"""Lombardi drawings, equiangular arc-quadrilaterals and bipolar coordinates."""

from .arcquad import ArcQuad, build_from_circle, canonical_rhombus_form, check_cyclic, sigma_span
from .bipolar import BipolarCoord, BipolarFrame, from_bipolar, sigma_tangent, to_bipolar
from .certify import closure_search, fan_step_check, lift_check, tilt_lower_bound
from .geom import INF, DirectedArc, GeneralizedCircle, circumcircle, intersect
from .graphs import EmbeddedGraph, build_B, build_S, quad_faces
from .lombardi import LombardiDrawing, angular_resolution, render_svg, validate
from .moebius import MoebiusTransform, apply, compose, fixing_foci, inverse

__version__ = "0.1.0"

__all__ = [
    "ArcQuad", "BipolarCoord", "BipolarFrame", "DirectedArc", "EmbeddedGraph",
    "GeneralizedCircle", "INF", "LombardiDrawing", "MoebiusTransform",
    "angular_resolution", "apply", "build_B", "build_S", "build_from_circle",
    "canonical_rhombus_form", "check_cyclic", "circumcircle", "closure_search",
    "compose", "fan_step_check", "fixing_foci", "from_bipolar", "intersect",
    "inverse", "lift_check", "quad_faces", "render_svg", "sigma_span",
    "sigma_tangent", "tilt_lower_bound", "to_bipolar", "validate",
]
