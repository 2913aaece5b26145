"""Bipolar coordinates with respect to two foci.

For a frame with foci ``s`` and ``t``, the coordinates of a point ``p`` are

    sigma = oriented angle s-p-t  (counterclockwise from ray p->s to ray p->t)
    tau   = ln(|p - s| / |p - t|)

so points nearer ``t`` have positive tau.  Both are read off from the
Moebius coordinate ``zeta = (p - s)/(t - p)``: ``log zeta = tau + i(pi - sigma)``.
Maps fixing both foci act on zeta by multiplication, hence on (sigma, tau)
by translation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import CoincidentFoci, NotIncident
from .geom import (
    DEFAULT_TOL,
    INF,
    DirectedArc,
    GeneralizedCircle,
    as_point,
    outgoing_direction,
    wrap_angle,
)
from .moebius import MoebiusTransform, apply_to_circle, inverse


@dataclass(frozen=True)
class BipolarFrame:
    s: complex
    t: complex

    def __post_init__(self):
        s, t = as_point(self.s), as_point(self.t)
        if s is INF or t is INF or s == t:
            raise CoincidentFoci("foci must be distinct finite points")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)

    def zeta_map(self) -> MoebiusTransform:
        """p -> (p - s)/(t - p)."""
        return MoebiusTransform(1, -self.s, -1, self.t)

    @property
    def axis_angle(self) -> float:
        return cmath.phase(self.t - self.s)


@dataclass(frozen=True)
class BipolarCoord:
    sigma: float
    tau: float
    at_focus: bool = False


def to_bipolar(f: BipolarFrame, p) -> BipolarCoord:
    p = as_point(p)
    if p is INF:
        return BipolarCoord(0.0, 0.0)
    if p == f.s:
        return BipolarCoord(math.nan, -math.inf, True)
    if p == f.t:
        return BipolarCoord(math.nan, math.inf, True)
    sigma = wrap_angle(cmath.phase((f.t - p) / (f.s - p)))
    tau = math.log(abs(p - f.s) / abs(p - f.t))
    return BipolarCoord(sigma, tau)


def from_bipolar(f: BipolarFrame, c: BipolarCoord) -> complex:
    if not (math.isfinite(c.sigma) and math.isfinite(c.tau)):
        raise ValueError("from_bipolar needs finite coordinates")
    zeta = -cmath.exp(complex(c.tau, -c.sigma))
    if 1.0 + zeta == 0:
        return INF
    return (f.s + f.t * zeta) / (1.0 + zeta)


def sigma_circle(f: BipolarFrame, sigma: float) -> GeneralizedCircle:
    """Circle through both foci on which the coordinate equals sigma (or sigma - pi)."""
    line = GeneralizedCircle.line_through(0, cmath.exp(1j * (math.pi - sigma)))
    return apply_to_circle(inverse(f.zeta_map()), line)


def tau_circle(f: BipolarFrame, tau: float):
    """Apollonius circle |p - s| / |p - t| = e^tau.

    ``tau = +inf`` / ``-inf`` return the degenerate circles, the foci
    ``t`` / ``s`` themselves, as points.
    """
    if tau == math.inf:
        return f.t
    if tau == -math.inf:
        return f.s
    if tau == 0.0:
        return GeneralizedCircle.line_through((f.s + f.t) / 2, (f.s + f.t) / 2 + 1j * (f.t - f.s))
    level = GeneralizedCircle.from_center_radius(0, math.exp(tau))
    return apply_to_circle(inverse(f.zeta_map()), level)


def sigma_tangent(f: BipolarFrame, arc: DirectedArc, focus, tol: float = DEFAULT_TOL) -> float:
    """Limit of the sigma coordinate along ``arc`` as it approaches ``focus``."""
    focus = as_point(focus)
    if focus is INF:
        raise NotIncident("focus must be finite")
    scale = max(1.0, abs(f.t - f.s))
    if abs(focus - f.s) <= tol * scale:
        d = outgoing_direction(arc, f.s, tol)
        return wrap_angle(math.pi - d + f.axis_angle)
    if abs(focus - f.t) <= tol * scale:
        d = outgoing_direction(arc, f.t, tol)
        return wrap_angle(d - f.axis_angle)
    raise NotIncident("focus is not one of the frame's foci")
