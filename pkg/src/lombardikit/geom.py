"""Plane primitives: points, generalized circles and directed circular arcs.

Points are plain Python complex numbers ``x + iy``.  The point at infinity
of the extended plane is the singleton :data:`INF`; it is never encoded by
large coordinates.

A generalized circle is stored by the real/complex coefficients of

    A |z|^2 + conj(B) z + B conj(z) + C = 0,

scaled so the largest coefficient magnitude is 1.  ``A = 0`` is a line.
The sign is canonical (``A > 0`` for proper circles), so for circles the
form is negative exactly on the open disk.

A directed arc is given by its endpoints and a *bulge*, the signed tangent
of a quarter of the subtended central angle.  Positive bulge means the arc
bows to the left of its chord (it is traversed clockwise around its
carrier); zero bulge is the straight segment.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DegenerateCircle, DuplicatePoints, GeometryError, NotIncident

DEFAULT_TOL = 1e-9
TAU = 2.0 * math.pi


class PointAtInfinity:
    """The point at infinity of the extended complex plane."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (PointAtInfinity, ())


INF = PointAtInfinity()

Point = Union[complex, PointAtInfinity]


def is_inf(p) -> bool:
    return p is INF


def as_point(p) -> Point:
    """Coerce ``(x, y)``, a number or :data:`INF` into a point."""
    if p is INF:
        return INF
    if isinstance(p, (tuple, list, np.ndarray)):
        x, y = p
        z = complex(float(x), float(y))
    else:
        z = complex(p)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise GeometryError(f"non-finite point {p!r}; use INF for infinity")
    return z


def wrap_angle(x: float) -> float:
    """Reduce an angle to (-pi, pi]."""
    y = math.remainder(x, TAU)
    if y <= -math.pi:
        y += TAU
    return y


def angle_mod(x: float) -> float:
    """Reduce an angle to [0, 2*pi)."""
    y = math.fmod(x, TAU)
    if y < 0:
        y += TAU
    if y >= TAU:
        y -= TAU
    return y


# ---------------------------------------------------------------------------
# Generalized circles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneralizedCircle:
    A: float
    B: complex
    C: float

    def __post_init__(self):
        A, B, C = float(self.A), complex(self.B), float(self.C)
        scale = max(abs(A), abs(B), abs(C))
        if not math.isfinite(scale) or scale == 0.0:
            raise DegenerateCircle("zero or non-finite circle coefficients")
        A, B, C = A / scale, B / scale, C / scale
        if abs(B) ** 2 - A * C <= 1e-15:
            raise DegenerateCircle("circle has no real points")
        if abs(A) < 1e-15:
            A = 0.0
        if A < 0 or (A == 0.0 and (B.real < 0 or (B.real == 0 and B.imag < 0))):
            A, B, C = -A, -B, -C
        object.__setattr__(self, "A", A + 0.0)
        object.__setattr__(self, "B", complex(B.real + 0.0, B.imag + 0.0))
        object.__setattr__(self, "C", C + 0.0)

    @classmethod
    def from_center_radius(cls, center, radius: float) -> "GeneralizedCircle":
        c = as_point(center)
        if radius <= 0:
            raise DegenerateCircle("radius must be positive")
        return cls(1.0, -c, abs(c) ** 2 - radius**2)

    @classmethod
    def line_through(cls, p, q) -> "GeneralizedCircle":
        p, q = as_point(p), as_point(q)
        if abs(p - q) == 0:
            raise DuplicatePoints("a line needs two distinct points")
        n = 1j * (q - p)  # normal
        return cls(0.0, n, -2.0 * (n.conjugate() * p).real)

    @classmethod
    def from_matrix(cls, H) -> "GeneralizedCircle":
        """Build from a Hermitian matrix [[A, B], [conj(B), C]]."""
        return cls(H[0][0].real, H[0][1], H[1][1].real)

    def matrix(self) -> np.ndarray:
        return np.array([[self.A, self.B], [self.B.conjugate(), self.C]], dtype=complex)

    @property
    def is_line(self) -> bool:
        return self.A == 0.0 or abs(self.A) < 1e-12 * abs(self.B)

    @property
    def center(self) -> complex:
        if self.is_line:
            raise GeometryError("a line has no center")
        return -self.B / self.A

    @property
    def radius(self) -> float:
        if self.is_line:
            return math.inf
        return math.sqrt(abs(self.B) ** 2 - self.A * self.C) / abs(self.A)

    def evaluate(self, p) -> float:
        """Value of the normalized circle form at ``p`` (``A`` at infinity)."""
        if p is INF:
            return self.A
        z = complex(p)
        return self.A * abs(z) ** 2 + 2.0 * (self.B.conjugate() * z).real + self.C

    def contains_point(self, p, tol: float = DEFAULT_TOL) -> bool:
        return on_circle(self, p, tol)

    def same_as(self, other: "GeneralizedCircle", tol: float = DEFAULT_TOL) -> bool:
        return (
            abs(self.A - other.A) <= tol
            and abs(self.B - other.B) <= tol
            and abs(self.C - other.C) <= tol
        )

    def foot(self) -> complex:
        """Point of a line closest to the origin."""
        n = self.B / abs(self.B)
        return -self.C / (2.0 * abs(self.B)) * n

    def sample(self, n: int, span: float = 10.0) -> list:
        """``n`` points on the circle (or on a window of the line)."""
        if self.is_line:
            d = 1j * self.B / abs(self.B)
            base = self.foot()
            return [base + d * s for s in np.linspace(-span, span, n)]
        c, r = self.center, self.radius
        return [c + r * cmath.exp(1j * a) for a in np.linspace(0.0, TAU, n, endpoint=False)]

    def __repr__(self):
        if self.is_line:
            return f"Line(normal={self.B:.6g}, C={self.C:.6g})"
        return f"Circle(center={self.center:.6g}, radius={self.radius:.6g})"


def on_circle(c: GeneralizedCircle, p, tol: float = DEFAULT_TOL) -> bool:
    """True iff the normalized circle form at ``p`` has magnitude <= tol."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    return abs(c.evaluate(p)) <= tol


def circumcircle(p1, p2, p3, tol: float = 1e-12) -> GeneralizedCircle:
    """The generalized circle through three distinct points (a line if collinear).

    One of the points may be :data:`INF`, in which case the result is the
    line through the other two.
    """
    pts = [as_point(p) for p in (p1, p2, p3)]
    finite = [p for p in pts if p is not INF]
    if len(finite) < 2:
        raise DuplicatePoints("at most one point may be at infinity")
    if len(finite) == 2:
        return GeneralizedCircle.line_through(*finite)
    a, b, c = finite
    scale = max(abs(a - b), abs(b - c), abs(a - c))
    if min(abs(a - b), abs(b - c), abs(a - c)) <= tol * max(scale, 1.0):
        raise DuplicatePoints("circumcircle needs pairwise distinct points")
    # circle through 0, u, v in coordinates shifted to a
    u, v = b - a, c - a
    u2, ux, uy = abs(u) ** 2, 2.0 * u.real, 2.0 * u.imag
    v2, vx, vy = abs(v) ** 2, 2.0 * v.real, 2.0 * v.imag
    # cross product of the rows (|w|^2, 2 Re w, 2 Im w) for w = u, v
    A = ux * vy - uy * vx
    B = complex(uy * v2 - u2 * vy, u2 * vx - ux * v2)
    # translate back: form(z) = A|z-a|^2 + 2Re(conj(B)(z-a))
    return GeneralizedCircle(
        A, B - A * a, A * abs(a) ** 2 - 2.0 * (B.conjugate() * a).real
    )


# ---------------------------------------------------------------------------
# Directed arcs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DirectedArc:
    start: complex
    end: complex
    bulge: float = 0.0

    def __post_init__(self):
        s, e = as_point(self.start), as_point(self.end)
        if s is INF or e is INF:
            raise GeometryError("arc endpoints must be finite")
        b = float(self.bulge)
        if not math.isfinite(b):
            raise GeometryError("bulge must be finite")
        if s == e:
            raise DuplicatePoints("arc endpoints coincide")
        object.__setattr__(self, "start", s)
        object.__setattr__(self, "end", e)
        object.__setattr__(self, "bulge", b)

    @classmethod
    def through(cls, start, via, end) -> "DirectedArc":
        """The arc from ``start`` to ``end`` passing through ``via``."""
        s, m, e = as_point(start), as_point(via), as_point(end)
        if s == e:
            raise DuplicatePoints("arc endpoints coincide")
        w = (m - s) / (e - s)
        if w == 0 or w == 1:
            raise DuplicatePoints("via point coincides with an endpoint")
        psi = cmath.phase(w / (1.0 - w))
        if abs(psi) >= math.pi:
            raise GeometryError("via point is on the complementary arc through infinity")
        return cls(s, e, math.tan(psi / 2.0))

    @classmethod
    def from_psi(cls, start, end, psi: float) -> "DirectedArc":
        """Arc whose start tangent is rotated ``psi`` (radians) left of the chord."""
        if not -math.pi < psi < math.pi:
            raise GeometryError("psi must lie in (-pi, pi)")
        return cls(start, end, math.tan(psi / 2.0))

    @property
    def chord(self) -> complex:
        return self.end - self.start

    @property
    def psi(self) -> float:
        """Angle between the chord and the start tangent (positive = left)."""
        return 2.0 * math.atan(self.bulge)

    @property
    def sweep(self) -> float:
        """Signed central angle; negative for clockwise traversal."""
        return -4.0 * math.atan(self.bulge)

    def reversed(self) -> "DirectedArc":
        return DirectedArc(self.end, self.start, -self.bulge)

    def point_at(self, u: float) -> complex:
        """Point at parameter ``u`` in [0, 1] (rational, not arc-length)."""
        rot = cmath.exp(1j * self.psi)
        w = u * rot / ((1.0 - u) + u * rot)
        return self.start + self.chord * w

    def midpoint(self) -> complex:
        return self.start + self.chord * complex(1.0, self.bulge) / 2.0

    def sample(self, n: int, endpoints: bool = True) -> list:
        if endpoints:
            us = np.linspace(0.0, 1.0, n)
        else:
            us = np.linspace(0.0, 1.0, n + 2)[1:-1]
        return [self.point_at(float(u)) for u in us]

    @property
    def tangent_start(self) -> float:
        return wrap_angle(cmath.phase(self.chord) + self.psi)

    @property
    def tangent_end(self) -> float:
        return wrap_angle(cmath.phase(self.chord) - self.psi)

    @property
    def radius(self) -> float:
        if self.bulge == 0.0:
            return math.inf
        return abs(self.chord) / (2.0 * abs(math.sin(self.psi)))

    @property
    def center(self) -> complex:
        if self.bulge == 0.0:
            raise GeometryError("a straight segment has no center")
        b = self.bulge
        return (self.start + self.end) / 2.0 - 1j * self.chord / 2.0 * (1.0 - b * b) / (2.0 * b)

    def carrier(self) -> GeneralizedCircle:
        return carrier(self)

    def ratio(self, p) -> complex:
        """Moebius coordinate ``w/(1-w)`` of ``p`` in the arc's chord frame.

        The arc is the ray of argument ``psi``; the complementary arc of the
        carrier has argument ``psi - pi``.
        """
        w = (complex(p) - self.start) / self.chord
        return w / (1.0 - w)

    def locate(self, p, tol: float = DEFAULT_TOL):
        """Classify a point assumed to be on the carrier.

        Returns ``"start"``, ``"end"``, ``"interior"`` or ``None``.
        """
        p = complex(p)
        eps = tol * max(1.0, abs(self.chord))
        if abs(p - self.start) <= eps:
            return "start"
        if abs(p - self.end) <= eps:
            return "end"
        r = self.ratio(p)
        if (r * cmath.exp(-1j * self.psi)).real > 0:
            return "interior"
        return None

    def contains(self, p, tol: float = DEFAULT_TOL) -> bool:
        return on_circle(self.carrier(), p, tol) and self.locate(p, tol) is not None

    def segment_contains(self, p) -> bool:
        """Strictly inside the region between the chord and the arc."""
        if self.bulge == 0.0:
            return False
        a = cmath.phase(self.ratio(p))
        return 0.0 < a < self.psi if self.psi > 0 else self.psi < a < 0.0


def carrier(arc: DirectedArc) -> GeneralizedCircle:
    """The circle (or line, for zero bulge) containing ``arc``."""
    if arc.bulge == 0.0:
        return GeneralizedCircle.line_through(arc.start, arc.end)
    return circumcircle(arc.start, arc.midpoint(), arc.end)


def tangent_direction(arc: DirectedArc, at: str = "start") -> float:
    """Direction of travel (radians, in (-pi, pi]) at the chosen endpoint."""
    if at == "start":
        return arc.tangent_start
    if at == "end":
        return arc.tangent_end
    raise ValueError("at must be 'start' or 'end'")


def outgoing_direction(arc: DirectedArc, at, tol: float = DEFAULT_TOL) -> float:
    """Direction in which ``arc`` leaves the endpoint ``at``."""
    at = complex(at)
    ds, de = abs(arc.start - at), abs(arc.end - at)
    if min(ds, de) > tol * max(1.0, abs(arc.chord)):
        raise NotIncident(f"{at} is not an endpoint of {arc}")
    if ds <= de:
        return arc.tangent_start
    return wrap_angle(arc.tangent_end + math.pi)


def angle_between(a1: DirectedArc, a2: DirectedArc, at, tol: float = DEFAULT_TOL) -> float:
    """Counterclockwise angle in [0, 2pi) from a1's to a2's outgoing tangent at ``at``."""
    return angle_mod(outgoing_direction(a2, at, tol) - outgoing_direction(a1, at, tol))


@dataclass(frozen=True)
class Hit:
    point: complex
    on_first: str  # "start" | "end" | "interior"
    on_second: str

    def swapped(self) -> "Hit":
        return Hit(self.point, self.on_second, self.on_first)


@dataclass(frozen=True)
class Overlap:
    """Two arcs share a carrier and a sub-arc of positive length."""

    first: DirectedArc
    second: DirectedArc


def _quadratic_roots(qa: float, qb: float, qc: float, rel: float = 1e-12):
    """Real projective roots of qa*r^2 + qb*r + qc; ``math.inf`` marks r = infinity."""
    disc = qb * qb - 4.0 * qa * qc
    if disc < 0:
        if disc >= -rel * (qb * qb + 4.0 * abs(qa * qc)):
            disc = 0.0
        else:
            return []
    sq = math.sqrt(disc)
    q = -0.5 * (qb + math.copysign(sq, qb))
    roots = []
    if q == 0.0:
        # qb == 0 and qa*qc == 0: double root at 0 or infinity
        roots.append(0.0 if qc == 0.0 else math.inf)
        return roots
    roots.append(q / qa if qa != 0.0 else math.inf)
    roots.append(qc / q)
    return roots


def intersect(a1: DirectedArc, a2: DirectedArc, tol: float = DEFAULT_TOL):
    """Points common to both arcs.

    Returns a list of :class:`Hit` (at most two) or an :class:`Overlap` when
    the arcs share a carrier and overlap along a sub-arc.
    """
    c2 = carrier(a2)
    if all(on_circle(c2, p, tol) for p in (a1.start, a1.midpoint(), a1.end)):
        return _cocircular(a1, a2, tol)
    # carrier of a2 in a1's chord frame z = a1.start + L*w, w = rho*u/(1 + rho*u)
    L = a1.chord
    A = c2.A * abs(L) ** 2
    B = L.conjugate() * (c2.A * a1.start + c2.B)
    C = c2.evaluate(a1.start)
    u = cmath.exp(1j * a1.psi)
    qa = A + 2.0 * B.real + C
    qb = 2.0 * (B.conjugate() * u).real + 2.0 * C * u.real
    scale = max(1.0, abs(L))
    hits: list[Hit] = []
    # endpoints first: at a tangency the quadratic has a double root that
    # rounding can lose or shift by ~sqrt(eps)
    c1 = carrier(a1)
    for p, where in ((a1.start, "start"), (a1.end, "end")):
        w2 = a2.locate(p, tol) if on_circle(c2, p, tol) else None
        if w2 is not None:
            hits.append(Hit(p, where, w2))
    for p, where in ((a2.start, "start"), (a2.end, "end")):
        w1 = a1.locate(p, tol) if on_circle(c1, p, tol) else None
        if w1 is not None and not any(abs(h.point - p) <= tol * scale for h in hits):
            hits.append(Hit(p, w1, where))
    ends = list(hits)
    for rho in _quadratic_roots(qa, qb, C):
        if rho == math.inf:
            z = a1.end
        else:
            den = 1.0 + rho * u
            if abs(den) < 1e-300:
                continue
            z = a1.start + L * (rho * u / den)
        w1 = a1.locate(z, tol)
        w2 = a2.locate(z, tol)
        if w1 is None or w2 is None:
            continue
        if w1 == "start":
            z = a1.start
        elif w1 == "end":
            z = a1.end
        elif w2 == "start":
            z = a2.start
        elif w2 == "end":
            z = a2.end
        if any(abs(h.point - z) <= tol * scale for h in hits):
            continue
        if any(abs(h.point - z) <= 1e-6 * scale for h in ends):
            continue
        hits.append(Hit(z, w1, w2))
    hits.sort(key=lambda h: (h.point.real, h.point.imag))
    return hits


def _cocircular(a1: DirectedArc, a2: DirectedArc, tol: float):
    for p in (a2.start, a2.end, a2.midpoint()):
        if a1.locate(p, tol) == "interior":
            return Overlap(a1, a2)
    for p in (a1.start, a1.end, a1.midpoint()):
        if a2.locate(p, tol) == "interior":
            return Overlap(a1, a2)
    hits = []
    for p in (a1.start, a1.end):
        w2 = a2.locate(p, tol)
        if w2 is not None:
            hits.append(Hit(p, a1.locate(p, tol), w2))
    hits.sort(key=lambda h: (h.point.real, h.point.imag))
    return hits


def winding_number(arcs, p) -> int:
    """Winding number of a closed chain of arcs around ``p``."""
    p = complex(p)
    total = 0.0
    for arc in arcs:
        total += cmath.phase((arc.end - p) / (arc.start - p))
        if arc.segment_contains(p):
            total -= math.copysign(TAU, arc.bulge)
    return int(round(total / TAU))
