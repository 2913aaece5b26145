import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from lombardikit.bipolar import (
    BipolarCoord,
    BipolarFrame,
    from_bipolar,
    sigma_circle,
    sigma_tangent,
    tau_circle,
    to_bipolar,
)
from lombardikit.errors import CoincidentFoci, NotIncident
from lombardikit.geom import INF, DirectedArc, GeneralizedCircle, on_circle, wrap_angle
from lombardikit.moebius import apply, apply_to_arc, fixing_foci
from strategies import angles, points

UNIT = BipolarFrame(-1, 1)


def sigma_diff(a, b):
    return abs(wrap_angle(a - b))


@st.composite
def frames(draw):
    s, t = draw(points), draw(points)
    assume(abs(s - t) > 0.2)
    return BipolarFrame(s, t)


def test_coordinates_examples():
    c = to_bipolar(UNIT, 1j)
    assert c.sigma == pytest.approx(math.pi / 2) and c.tau == pytest.approx(0, abs=1e-15)
    c = to_bipolar(UNIT, 0)
    assert c.sigma == pytest.approx(math.pi) and c.tau == 0
    c = to_bipolar(UNIT, 3)
    assert c.tau == pytest.approx(math.log(2)) and sigma_diff(c.sigma, 0) < 1e-15


def test_foci_give_sentinels():
    at_t, at_s = to_bipolar(UNIT, 1), to_bipolar(UNIT, -1)
    assert at_t.at_focus and at_t.tau == math.inf and math.isnan(at_t.sigma)
    assert at_s.at_focus and at_s.tau == -math.inf


def test_frame_rejects_coincident_foci():
    with pytest.raises(CoincidentFoci):
        BipolarFrame(2j, 2j)


def test_from_bipolar_examples():
    assert from_bipolar(UNIT, BipolarCoord(0.0, 0.0)) is INF
    assert abs(from_bipolar(UNIT, BipolarCoord(math.pi / 2, 0)) - 1j) < 1e-15
    assert abs(from_bipolar(UNIT, BipolarCoord(math.pi, 0))) < 1e-15


@given(frames(), points)
def test_round_trip(f, p):
    assume(min(abs(p - f.s), abs(p - f.t)) > 1e-3)
    c = to_bipolar(f, p)
    assert abs(from_bipolar(f, c) - p) < 1e-9 * max(1, abs(p))
    back = to_bipolar(f, from_bipolar(f, c))
    assert sigma_diff(back.sigma, c.sigma) < 1e-9 and back.tau == pytest.approx(c.tau, abs=1e-9)


def test_sigma_circle_examples():
    c = sigma_circle(UNIT, math.pi / 2)
    assert abs(c.center) < 1e-12 and c.radius == pytest.approx(1)
    line = sigma_circle(UNIT, math.pi)
    assert line.is_line and on_circle(line, 7) and on_circle(line, -7)


@given(frames(), angles)
def test_sigma_circle_points_have_that_sigma(f, sigma):
    c = sigma_circle(f, sigma)
    assert on_circle(c, f.s) and on_circle(c, f.t)
    for p in c.sample(20):
        if min(abs(p - f.s), abs(p - f.t)) < 1e-4:
            continue
        got = to_bipolar(f, p).sigma
        assert min(sigma_diff(got, sigma), sigma_diff(got, sigma - math.pi)) < 1e-7


def test_tau_circle_examples():
    line = tau_circle(UNIT, 0.0)
    assert line.is_line and on_circle(line, 0) and on_circle(line, 5j)
    c = tau_circle(UNIT, math.log(2))
    assert abs(c.center - 5 / 3) < 1e-12 and c.radius == pytest.approx(4 / 3)
    # the Apollonius condition, checked at sampled points
    for p in c.sample(20):
        assert abs(p + 1) == pytest.approx(2 * abs(p - 1))
    assert tau_circle(UNIT, math.inf) == 1


@given(frames(), st.floats(-3, 3).filter(lambda x: abs(x) > 1e-3))
def test_tau_circles_separate_foci(f, tau):
    c = tau_circle(f, tau)
    assert np.sign(c.evaluate(f.s)) != np.sign(c.evaluate(f.t))
    for p in c.sample(20):
        assert to_bipolar(f, p).tau == pytest.approx(tau, abs=1e-8)


@given(frames(), angles, st.floats(-3, 3))
def test_level_sets_are_orthogonal(f, sigma, tau):
    p = from_bipolar(f, BipolarCoord(sigma, tau))
    assume(p is not INF)
    assume(min(abs(p - f.s), abs(p - f.t)) > 1e-2 and abs(p) < 1e3)
    h = 1e-6
    ds = from_bipolar(f, BipolarCoord(sigma + h, tau)) - from_bipolar(f, BipolarCoord(sigma - h, tau))
    dt = from_bipolar(f, BipolarCoord(sigma, tau + h)) - from_bipolar(f, BipolarCoord(sigma, tau - h))
    cos = (ds.conjugate() * dt).real / (abs(ds) * abs(dt))
    assert abs(cos) < 1e-6
    # exact version on the level circles themselves
    cs, ct = sigma_circle(f, sigma), tau_circle(f, tau)
    if not cs.is_line and not ct.is_line:
        ns, nt = p - cs.center, p - ct.center
        assert abs((ns.conjugate() * nt).real) < 1e-8 * abs(ns) * abs(nt)


@given(frames(), angles, st.floats(-4, 4), points)
def test_focus_fixing_maps_translate_coordinates(f, dsigma, dtau, p):
    T = fixing_foci(f.s, f.t, dsigma, dtau)
    assume(min(abs(p - f.s), abs(p - f.t)) > 1e-2)
    q = apply(T, p)
    a, b = to_bipolar(f, p), to_bipolar(f, q)
    assert sigma_diff(b.sigma - a.sigma, dsigma) < 1e-8
    assert b.tau - a.tau == pytest.approx(dtau, abs=1e-8)


def limit_sigma(f, arc, at_end=True):
    """Richardson-extrapolated sigma along ``arc`` approaching its end (or start)."""

    def g(h):
        return to_bipolar(f, arc.point_at(1 - h if at_end else h)).sigma

    h = 1e-4
    base = g(h)
    return base + 2 * wrap_angle(g(h / 2) - base) - wrap_angle(g(h) - base)


def test_sigma_tangent_along_focal_circle():
    f = BipolarFrame(-1j, 1j)
    left = DirectedArc(-1, 1j, math.tan(math.pi / 8))
    assert sigma_tangent(f, left, 1j) == pytest.approx(math.pi / 2)
    assert limit_sigma(f, left) == pytest.approx(math.pi / 2, abs=1e-7)
    right = DirectedArc(1, 1j, -math.tan(math.pi / 8))
    assert sigma_tangent(f, right, 1j) == pytest.approx(-math.pi / 2)


def test_sigma_tangent_on_focal_line():
    f = BipolarFrame(-1j, 1j)
    inner = DirectedArc(0, 1j, 0.0)
    outer = DirectedArc(3j, 1j, 0.0)
    assert sigma_diff(sigma_tangent(f, inner, 1j), math.pi) < 1e-12
    assert sigma_diff(sigma_tangent(f, outer, 1j), 0.0) < 1e-12


def test_sigma_tangent_needs_a_focus():
    with pytest.raises(NotIncident):
        sigma_tangent(UNIT, DirectedArc(1, 2j, 0.2), 2j)


@given(frames(), st.floats(0.1, 0.9), st.floats(-2, 2), st.booleans())
def test_sigma_tangent_matches_limit(f, u, bulge, at_t):
    focus = f.t if at_t else f.s
    other = f.s + (f.t - f.s) * complex(u, 0.7)
    arc = DirectedArc(other, focus, bulge)
    assume(min(abs(arc.point_at(x) - g) for x in (0.25, 0.5, 0.75) for g in (f.s, f.t)) > 1e-2)
    assert sigma_diff(sigma_tangent(f, arc, focus), limit_sigma(f, arc)) < 1e-6


@given(frames(), angles, st.floats(-2, 2), st.floats(-1.5, 1.5))
def test_sigma_tangent_shifts_under_focus_fixing_maps(f, dsigma, dtau, bulge):
    arc = DirectedArc(f.s + (f.t - f.s) * (0.5 + 0.6j), f.t, bulge)
    T = fixing_foci(f.s, f.t, dsigma, dtau)
    try:
        img = apply_to_arc(T, arc)
    except ValueError:
        assume(False)
    shift = sigma_tangent(f, img, f.t) - sigma_tangent(f, arc, f.t)
    assert sigma_diff(shift, dsigma) < 1e-7
