"""Equiangular circular-arc quadrilaterals.

An equiangular non-self-crossing arc-quadrilateral always has its four
vertices on a common circle, and lies entirely on one side of it.  Each side
cuts off a bigon from that circle; with interior angle ``theta`` and bigon
angles ``phi1`` (sides ab, cd) and ``phi2`` (sides bc, da),

    theta + phi1 + phi2 = pi.

The tilt of the quadrilateral is ``max(phi1, phi2)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .bipolar import BipolarFrame, sigma_tangent
from .errors import (
    BadAngles,
    ConvergenceFailure,
    GeometryError,
    NotCyclic,
    NotEquiangular,
    SelfCrossing,
    UnboundedImage,
)
from .geom import (
    DEFAULT_TOL,
    INF,
    TAU,
    DirectedArc,
    GeneralizedCircle,
    Overlap,
    circumcircle,
    intersect,
    wrap_angle,
)
from .moebius import (
    MoebiusTransform,
    apply,
    apply_to_arc,
    compose,
    fixing_foci,
    transform_hermitian,
)

QUAD_TOL = 1e-7


@dataclass(frozen=True)
class ArcQuad:
    """Four vertices a, b, c, d and sides ab, bc, cd, da.

    ``orientation`` is +1 when walking a -> b -> c -> d keeps the
    quadrilateral on the left, -1 otherwise.
    """

    vertices: tuple
    sides: tuple
    theta: float
    bigons: tuple
    circle: GeneralizedCircle
    inside: bool
    orientation: int

    @property
    def phi1(self) -> float:
        return self.bigons[0]

    @property
    def phi2(self) -> float:
        return self.bigons[1]

    @property
    def tilt(self) -> float:
        return max(self.bigons)

    def transformed(self, T: MoebiusTransform, tol: float = QUAD_TOL) -> "ArcQuad":
        return quad_from_sides([apply_to_arc(T, s) for s in self.sides], tol)

    def boundary_samples(self, n: int) -> list:
        """``n`` points spread over the open sides."""
        per = [n // 4 + (1 if i < n % 4 else 0) for i in range(4)]
        pts = []
        for side, m in zip(self.sides, per):
            pts.extend(side.sample(m, endpoints=False))
        return pts


def interior_angle(q: ArcQuad) -> float:
    return q.theta


def tilt(q: ArcQuad) -> float:
    return q.tilt


def _cyclic_orientation(alphas):
    n = len(alphas)
    fwd = sum((alphas[(i + 1) % n] - alphas[i]) % TAU for i in range(n))
    bwd = sum((alphas[i] - alphas[(i + 1) % n]) % TAU for i in range(n))
    if len({round(a % TAU, 12) for a in alphas}) < n:
        raise BadAngles("vertex positions must be distinct")
    if abs(fwd - TAU) < 1e-9:
        return 1
    if abs(bwd - TAU) < 1e-9:
        return -1
    raise BadAngles("vertex positions are not in cyclic order")


def build_from_circle(
    circle: GeneralizedCircle,
    positions,
    theta: float,
    phi1: float,
    inside: bool = True,
    tol: float = QUAD_TOL,
) -> ArcQuad:
    """Construct the equiangular quad with vertices at angular ``positions`` on ``circle``.

    Sides ab and cd meet the circle at ``phi1``, sides bc and da at
    ``pi - theta - phi1``.  Positions may run either way around the circle.
    """
    phi2 = math.pi - theta - phi1
    if not (theta > 0 and phi1 >= 0 and phi2 >= -1e-15):
        raise BadAngles(f"need theta > 0 and bigon angles >= 0 (theta={theta}, phi1={phi1})")
    phi2 = max(phi2, 0.0)
    if circle.is_line:
        raise GeometryError("build_from_circle needs a proper circle")
    alphas = [float(a) for a in positions]
    if len(alphas) != 4:
        raise BadAngles("need four vertex positions")
    orient = _cyclic_orientation(alphas)
    c, r = circle.center, circle.radius
    verts = [c + r * cmath.exp(1j * a) for a in alphas]
    sign = orient if inside else -orient
    sides = []
    for i in range(4):
        gap = (orient * (alphas[(i + 1) % 4] - alphas[i])) % TAU
        psi = -orient * gap / 2.0 + sign * (phi1 if i % 2 == 0 else phi2)
        if not -math.pi < psi < math.pi:
            raise UnboundedImage("a side of this quadrilateral would pass through infinity")
        sides.append(DirectedArc.from_psi(verts[i], verts[(i + 1) % 4], psi))
    check_simple(sides, tol)
    q = quad_from_sides(sides, tol)
    return q


def _tangent_at(arc: DirectedArc, z: complex) -> complex:
    if arc.bulge == 0.0:
        return arc.chord / abs(arc.chord)
    d = 1j * (z - arc.center)
    return d / abs(d)


def _transversal(a1: DirectedArc, a2: DirectedArc, z: complex) -> bool:
    u, v = _tangent_at(a1, z), _tangent_at(a2, z)
    return abs((u.conjugate() * v).imag) > 1e-6


def check_simple(sides, tol: float = QUAD_TOL) -> None:
    """Raise SelfCrossing if the closed chain of four sides crosses itself.

    Tangential contact between two sides is not a crossing and is allowed.
    """
    for i in range(4):
        j = (i + 1) % 4
        hits = intersect(sides[i], sides[j], 1e-9)
        if isinstance(hits, Overlap):
            raise SelfCrossing(f"sides {i} and {j} overlap")
        shared = sides[i].end
        for h in hits:
            if abs(h.point - shared) <= tol * max(1.0, abs(sides[i].chord)):
                continue
            if _transversal(sides[i], sides[j], h.point):
                raise SelfCrossing(f"adjacent sides {i} and {j} cross at {h.point}")
    for i, j in ((0, 2), (1, 3)):
        hits = intersect(sides[i], sides[j], 1e-9)
        if isinstance(hits, Overlap):
            raise SelfCrossing(f"opposite sides {i} and {j} overlap")
        for h in hits:
            if _transversal(sides[i], sides[j], h.point):
                raise SelfCrossing(f"opposite sides {i} and {j} cross at {h.point}")


def _turning(sides):
    """Exterior turns at the vertices and the total turning of the chain."""
    turns = []
    for i in range(4):
        prev = sides[i - 1]
        turns.append(wrap_angle(sides[i].tangent_start - prev.tangent_end))
    total = sum(s.sweep for s in sides) + sum(turns)
    return turns, total


def bounded_angles(sides) -> list:
    """Vertex angles of the bounded face enclosed by the closed chain (vertex a first)."""
    turns, total = _turning(sides)
    if total > 0:
        return [math.pi - t for t in turns]
    return [math.pi + t for t in turns]


def _bigon_angle(side: DirectedArc, other_vertex) -> float:
    """Angle between ``side`` and the circle arc joining its ends away from ``other_vertex``."""
    psi_c = wrap_angle(cmath.phase(side.ratio(other_vertex)) + math.pi)
    return abs(wrap_angle(side.psi - psi_c))


def quad_from_sides(sides, tol: float = QUAD_TOL) -> ArcQuad:
    """Measure a closed chain of four arcs as an equiangular cyclic quad."""
    sides = tuple(sides)
    if len(sides) != 4:
        raise GeometryError("a quadrilateral has four sides")
    for i in range(4):
        a, b = sides[i].end, sides[(i + 1) % 4].start
        if abs(a - b) > tol * max(1.0, abs(sides[i].chord)):
            raise GeometryError("sides do not close up")
    verts = tuple(s.start for s in sides)
    beta = bounded_angles(sides)
    if max(beta) - min(beta) > tol:
        raise NotEquiangular(f"vertex angles differ: {beta}")
    circle = circumcircle(*verts[:3])
    residual = abs(circle.evaluate(verts[3]))
    if residual > tol:
        raise NotCyclic(f"fourth vertex off the circumcircle by {residual:.3g}")
    bigons = tuple(_bigon_angle(sides[i], verts[(i + 2) % 4]) for i in range(4))
    theta = math.pi - bigons[0] - bigons[1]
    mean_beta = sum(beta) / 4.0
    bounded_is_quad = abs(mean_beta - theta) <= abs(mean_beta - (TAU - theta))
    if min(abs(mean_beta - theta), abs(mean_beta - (TAU - theta))) > 10 * tol:
        raise NotEquiangular("vertex angles disagree with the bigon angles")
    turns, total = _turning(sides)
    turn_sign = 1 if total > 0 else -1
    orientation = turn_sign if bounded_is_quad else -turn_sign
    # sides with zero bigon angle run along the circle and carry no sign
    vals = [circle.evaluate(s.midpoint()) for s in sides]
    signs = {math.copysign(1.0, v) for v in vals if abs(v) > tol}
    if len(signs) > 1:
        raise NotCyclic("quadrilateral straddles its circumcircle")
    inside = signs == {-1.0}
    if circle.is_line or not signs:
        inside = bounded_is_quad
    return ArcQuad(verts, sides, theta, bigons, circle, inside, orientation)


def check_cyclic(sides, tol: float = QUAD_TOL):
    """Return ``(circle, inside)`` for a closed equiangular arc-quad.

    Raises NotEquiangular for unequal vertex angles and NotCyclic if the
    vertices are not concyclic.
    """
    q = quad_from_sides(sides, tol)
    check_simple(q.sides, tol)
    return q.circle, q.inside


def sigma_span(q: ArcQuad, frame: BipolarFrame | None = None) -> float:
    """Sigma difference between side tp at t and side sq at s.

    The quad is read as s, p, t, q = a, b, c, d in a frame with foci s, t.
    The value equals ``2*theta + 2*phi1 - pi`` where ``phi1`` is the bigon
    angle of sides sp and tq.
    """
    s, p, t, _ = q.vertices
    if frame is None:
        frame = BipolarFrame(s, t)
    elif abs(frame.s - s) > 1e-9 * max(1.0, abs(s)) or abs(frame.t - t) > 1e-9 * max(1.0, abs(t)):
        raise GeometryError("frame foci must be the quad vertices s and t")
    at_t = sigma_tangent(frame, q.sides[1], t)
    at_s = sigma_tangent(frame, q.sides[3], s)
    return q.orientation * wrap_angle(at_t - at_s)


# ---------------------------------------------------------------------------
# Rhombus normal form
# ---------------------------------------------------------------------------


def _lorentz(H, K) -> float:
    return float((H[0, 1] * np.conj(K[0, 1])).real - (H[0, 0] * K[1, 1] + H[1, 1] * K[0, 0]).real / 2.0)


def _unit(H):
    q = _lorentz(H, H)
    if q <= 0:
        raise GeometryError("not a real circle")
    return H / math.sqrt(q)


def _oriented(arc: DirectedArc) -> np.ndarray:
    """Hermitian matrix of the carrier, negative on the left of travel."""
    H = arc.carrier().matrix()
    probe = arc.midpoint() + 1e-3 * abs(arc.chord) * cmath.exp(1j * (arc.tangent_start + arc.sweep / 2 + math.pi / 2))
    z = np.array([probe, 1.0])
    val = (np.conj(z) @ H @ z).real
    return _unit(-H if val > 0 else H)


@dataclass(frozen=True)
class FourCircleConfig:
    """Carriers of sides ab, bc, cd, da after normalization, plus the vertices."""

    centers: tuple
    radii: tuple
    vertices: tuple

    def radius_defects(self) -> tuple:
        r = self.radii
        return abs(r[0] - r[2]), abs(r[1] - r[3])

    def rhombus_defect(self) -> float:
        """Zero when ab/cd centers are +-u on the real axis and bc/da centers +-iv."""
        c = self.centers
        return max(
            abs(c[0] + c[2]), abs(c[1] + c[3]),
            abs(c[0].imag), abs(c[2].imag), abs(c[1].real), abs(c[3].real),
        )

    def rectangle_defect(self) -> float:
        """Zero when the vertex set is symmetric under both coordinate reflections."""
        vs = [v for v in self.vertices if v is not INF]
        if len(vs) < 4:
            return math.inf
        worst = 0.0
        for v in vs:
            worst = max(
                worst,
                min(abs(v.conjugate() - w) for w in vs),
                min(abs(-v.conjugate() - w) for w in vs),
            )
        return worst


def _distance(c: GeneralizedCircle, z: complex) -> float:
    if c.is_line:
        n = c.B / abs(c.B)
        return abs((n.conjugate() * z).real + c.C / (2.0 * abs(c.B)))
    return abs(abs(z - c.center) - c.radius)


def _config(T: MoebiusTransform, mats, verts) -> FourCircleConfig:
    centers, radii = [], []
    for H in mats:
        c = GeneralizedCircle.from_matrix(transform_hermitian(T, H))
        centers.append(c.center if not c.is_line else complex(math.inf, math.inf))
        radii.append(c.radius)
    return FourCircleConfig(tuple(centers), tuple(radii), tuple(apply(T, v) for v in verts))


def _slide_family(r: float, tol: float = 1e-10):
    """Maps fixing two equal circles centred at -1 and +1 with radius r."""
    if r < 1.0 - tol:
        ell = math.sqrt(1.0 - r * r)
        return (lambda x: fixing_foci(-ell, ell, x, 0.0)), (-math.pi, math.pi), True
    if r > 1.0 + tol:
        h = math.sqrt(r * r - 1.0)
        return (lambda x: fixing_foci(-1j * h, 1j * h, 0.0, x)), (-12.0, 12.0), False
    return (lambda x: MoebiusTransform(1, 0, 1j * x, 1)), (-1e6, 1e6), False


def canonical_rhombus_form(q: ArcQuad, tol: float = 1e-9, max_scan: int = 400):
    """Moebius-normalize ``q`` so its side carriers are centred on a rhombus.

    Stage one sends a circle of inversion exchanging the ab and cd carriers
    to a line, making those carriers mirror images of equal radius centred
    at -1 and +1.  Stage two slides along the one-parameter family fixing
    both until the bc and da centres are symmetric about the origin.

    Returns ``(T, config)``.
    """
    mats = [_oriented(s) for s in q.sides]
    h_ab, h_bc, h_cd, h_da = mats
    # stage 1: circle of inversion swapping the ab and cd carriers
    best = None
    for cand in (h_ab - h_cd, h_ab + h_cd):
        if _lorentz(cand, cand) <= 1e-12:
            continue
        m = _unit(cand)
        res = abs(_lorentz(h_bc, m)) + abs(_lorentz(h_da, m))
        if best is None or res < best[0]:
            best = (res, m)
    if best is None:
        raise ConvergenceFailure("no circle of inversion exchanges the ab and cd carriers")
    mirror = GeneralizedCircle.from_matrix(best[1])
    carriers = [s.carrier() for s in q.sides]
    if mirror.is_line and not (carriers[0].is_line or carriers[2].is_line):
        T1 = MoebiusTransform.identity()
    else:
        # invert about a point of the mirror circle far from the quad and its carriers
        samples = [p for s in q.sides for p in s.sample(24)]
        span = max(abs(p - samples[0]) for p in samples)
        cands = mirror.sample(64, span=4.0 * span) if mirror.is_line else mirror.sample(64)

        def clearance(z):
            return min(min(abs(z - p) for p in samples), min(_distance(c, z) for c in carriers))

        m0 = max(cands, key=clearance)
        T1 = MoebiusTransform(0, 1, 1, -m0)
    c_ab = GeneralizedCircle.from_matrix(transform_hermitian(T1, h_ab))
    c_cd = GeneralizedCircle.from_matrix(transform_hermitian(T1, h_cd))
    if c_ab.is_line or c_cd.is_line:
        raise ConvergenceFailure("stage one produced a line carrier")
    mid = (c_ab.center + c_cd.center) / 2.0
    half = (c_cd.center - c_ab.center) / 2.0
    S = MoebiusTransform.similarity(1.0 / half, -mid / half)
    T = compose(S, T1)
    r = (c_ab.radius + c_cd.radius) / (2.0 * abs(half))
    family, (lo, hi), periodic = _slide_family(r)

    def objective(x):
        G = compose(family(x), T)
        H1 = _unit(transform_hermitian(G, h_bc))
        H2 = _unit(transform_hermitian(G, h_da))
        return float((H1[0, 1].imag * H2[0, 0] + H2[0, 1].imag * H1[0, 0]).real)

    def radius_gap(x):
        cfg = _config(compose(family(x), T), mats, ())
        return abs(cfg.radii[1] - cfg.radii[3]) / max(cfg.radii[1], cfg.radii[3])

    roots = [0.0] if abs(objective(0.0)) < tol else []
    xs = np.linspace(lo, hi, max_scan + 1)
    vals = [objective(x) for x in xs]
    for i in range(len(xs) - 1):
        if np.sign(vals[i]) != np.sign(vals[i + 1]):
            roots.append(brentq(objective, xs[i], xs[i + 1], xtol=1e-15, maxiter=200))
    if not roots:
        raise ConvergenceFailure(
            "no bracketing interval for the slide parameter",
            {"objective_min": float(np.min(np.abs(vals)))},
        )
    # the centre condition has spurious solutions; the true slide also equalizes radii
    root = min(roots, key=lambda x: (round(radius_gap(x), 9), abs(x)))
    Tfin = compose(family(root), T)
    cfg = _config(Tfin, mats, q.vertices)
    if max(cfg.radius_defects()) > 1e-6 or cfg.rhombus_defect() > 1e-6:
        raise ConvergenceFailure(
            "normal form residuals too large",
            {"radius": cfg.radius_defects(), "rhombus": cfg.rhombus_defect()},
        )
    return Tfin, cfg
