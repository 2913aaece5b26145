"""Orientation-preserving Moebius transformations of the extended plane."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import CoincidentFoci, DegenerateTriple, GeometryError, UnboundedImage
from .geom import (
    DEFAULT_TOL,
    INF,
    DirectedArc,
    GeneralizedCircle,
    as_point,
    carrier,
    on_circle,
)


@dataclass(frozen=True)
class MoebiusTransform:
    """z -> (a z + b) / (c z + d), stored with a d - b c = 1."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        a, b, c, d = (complex(x) for x in (self.a, self.b, self.c, self.d))
        det = a * d - b * c
        if not cmath.isfinite(det) or abs(det) < 1e-300:
            raise GeometryError("singular Moebius coefficients")
        k = 1.0 / cmath.sqrt(det)
        for name, v in zip("abcd", (a, b, c, d)):
            object.__setattr__(self, name, v * k)

    @classmethod
    def identity(cls) -> "MoebiusTransform":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_matrix(cls, m) -> "MoebiusTransform":
        return cls(m[0][0], m[0][1], m[1][0], m[1][1])

    @classmethod
    def similarity(cls, scale: complex, shift: complex = 0) -> "MoebiusTransform":
        """z -> scale * z + shift."""
        return cls(scale, shift, 0, 1)

    @classmethod
    def reciprocal(cls) -> "MoebiusTransform":
        """z -> 1/z."""
        return cls(0, 1, 1, 0)

    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    def __call__(self, p):
        return apply(self, p)

    def __matmul__(self, other: "MoebiusTransform") -> "MoebiusTransform":
        return compose(self, other)

    @property
    def pole(self):
        """The point sent to infinity."""
        return INF if self.c == 0 else -self.d / self.c

    def close_to(self, other: "MoebiusTransform", tol: float = 1e-9) -> bool:
        """Equality as maps (coefficients up to the overall sign)."""
        m, n = self.matrix(), other.matrix()
        return bool(np.max(np.abs(m - n)) <= tol or np.max(np.abs(m + n)) <= tol)


def apply(T: MoebiusTransform, p):
    p = as_point(p)
    if p is INF:
        return INF if T.c == 0 else T.a / T.c
    den = T.c * p + T.d
    if den == 0:
        return INF
    return (T.a * p + T.b) / den


def compose(T1: MoebiusTransform, T2: MoebiusTransform) -> MoebiusTransform:
    """The map p -> T1(T2(p))."""
    return MoebiusTransform.from_matrix(T1.matrix() @ T2.matrix())


def inverse(T: MoebiusTransform) -> MoebiusTransform:
    return MoebiusTransform(T.d, -T.b, -T.c, T.a)


def transform_hermitian(T: MoebiusTransform, H: np.ndarray) -> np.ndarray:
    """Push a circle's Hermitian matrix through T (no renormalization)."""
    Mi = inverse(T).matrix()
    return Mi.conj().T @ H @ Mi


def apply_to_circle(T: MoebiusTransform, c: GeneralizedCircle) -> GeneralizedCircle:
    return GeneralizedCircle.from_matrix(transform_hermitian(T, c.matrix()))


def apply_to_arc(T: MoebiusTransform, arc: DirectedArc, tol: float = DEFAULT_TOL) -> DirectedArc:
    pole = T.pole
    scale = max(1.0, abs(arc.chord))
    if pole is not INF and abs(pole) < 1e100 * scale:
        if (
            min(abs(pole - arc.start), abs(pole - arc.end)) <= tol * scale
            or (on_circle(carrier(arc), pole, tol) and arc.locate(pole, tol) == "interior")
        ):
            raise UnboundedImage("arc passes through the pole of the transformation")
    s, m, e = apply(T, arc.start), apply(T, arc.midpoint()), apply(T, arc.end)
    if INF in (s, m, e):
        raise UnboundedImage("arc image reaches infinity")
    try:
        return DirectedArc.through(s, m, e)
    except GeometryError as exc:
        raise UnboundedImage(str(exc)) from exc


def focus_normal_form(a: complex, b: complex) -> MoebiusTransform:
    """q -> (a q + b) / (b q + a), the maps fixing +1 and -1."""
    return MoebiusTransform(a, b, b, a)


def fixing_foci(s, t, dsigma: float = 0.0, dtau: float = 0.0) -> MoebiusTransform:
    """The map fixing ``s`` and ``t`` that shifts bipolar (sigma, tau) by (dsigma, dtau).

    Built as the normal form with foci -1, +1 conjugated by the similarity
    taking (-1, +1) to (s, t).  The normal form multiplies the distance-ratio
    coordinate (1 + q)/(1 - q) by (a + b)/(a - b).
    """
    s, t = as_point(s), as_point(t)
    if s is INF or t is INF or abs(s - t) == 0:
        raise CoincidentFoci("foci must be distinct finite points")
    # (a + b)/(a - b) = exp(w) with a = cosh(w/2), b = sinh(w/2); det = 1
    half = complex(dtau, -dsigma) / 2.0
    N = focus_normal_form(cmath.cosh(half), cmath.sinh(half))
    S = MoebiusTransform.similarity((t - s) / 2.0, (s + t) / 2.0)
    return compose(S, compose(N, inverse(S)))


def _to_standard(p1, p2, p3) -> MoebiusTransform:
    """The map sending p1, p2, p3 to 0, 1, infinity."""
    if p1 is INF:
        return MoebiusTransform(0, p2 - p3, 1, -p3)
    if p2 is INF:
        return MoebiusTransform(1, -p1, 1, -p3)
    if p3 is INF:
        return MoebiusTransform(1, -p1, 0, p2 - p1)
    return MoebiusTransform(p2 - p3, -p1 * (p2 - p3), p2 - p1, -p3 * (p2 - p1))


def _check_triple(ps, tol):
    ps = [as_point(p) for p in ps]
    for i in range(3):
        for j in range(i + 1, 3):
            x, y = ps[i], ps[j]
            if x is INF or y is INF:
                if x is y:
                    raise DegenerateTriple("repeated point at infinity")
            elif abs(x - y) <= tol * max(1.0, abs(x), abs(y)):
                raise DegenerateTriple(f"points {x} and {y} coincide")
    return ps


def normalize_to(p1, p2, p3, q1, q2, q3, tol: float = 1e-12) -> MoebiusTransform:
    """The unique Moebius map with p_i -> q_i."""
    P = _to_standard(*_check_triple((p1, p2, p3), tol))
    Q = _to_standard(*_check_triple((q1, q2, q3), tol))
    return compose(inverse(Q), P)


def random_transform(rng, spread: float = 1.0) -> MoebiusTransform:
    """A random well-conditioned map; used by tests and the search harness."""
    while True:
        coeffs = rng.normal(size=4) + 1j * rng.normal(size=4)
        a, b, c, d = coeffs * np.array([1.0, spread, 1.0 / spread, 1.0])
        det = a * d - b * c
        if abs(det) > 0.2 * math.sqrt(abs(a * d) * abs(b * c) + 1e-12):
            return MoebiusTransform(a, b, c, d)
