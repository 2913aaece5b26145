import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lombardikit.arcquad import quad_from_sides
from lombardikit.bipolar import BipolarFrame, to_bipolar
from lombardikit.geom import DirectedArc
from lombardikit.certify import (
    MARGIN,
    NORMAL_FRAME,
    admissible_grid,
    build_fan,
    canonical_quad,
    closure_search,
    fan_step_check,
    feasible_gaps,
    lift_check,
    place_quad,
    spacing_defect,
    tilt_lower_bound,
)
from lombardikit.certify import _admissible_taus
from lombardikit.errors import BadParameter, PreconditionViolated
from lombardikit.moebius import apply, fixing_foci, random_transform

PI = math.pi


def tau_by_distance(r, s=-1j, t=1j):
    return math.log(abs(r - s) / abs(r - t))


def two_quad_fan(k=9, theta=None, tilt=None, step=None):
    theta = PI / k if theta is None else theta
    if tilt is None:
        tilt = max(0.8 * PI, tilt_lower_bound(k)[0] + 0.02)
    step = 2 * PI / k if step is None else step
    lo, hi = feasible_gaps(theta, tilt)
    gap = (lo + min(hi, lo + 4)) / 2
    sig = [PI / 2, PI / 2 + step]
    q0 = place_quad(theta, tilt, sig[0], 0.0, gap)
    window = _admissible_taus(q0, sig[1])
    assert window is not None or step > 3 * PI / k
    tau1 = window[0] + 0.5 if window else 1.0
    return build_fan(k, theta, tilt, sig, [0.0, tau1], [gap, gap])


# -- tilt bound --------------------------------------------------------------


def test_tilt_lower_bound_examples():
    assert tilt_lower_bound(9) == (pytest.approx(7 * PI / 9), True)
    assert tilt_lower_bound(9)[0] == pytest.approx(2.443, abs=1e-3)
    assert tilt_lower_bound(8) == (pytest.approx(3 * PI / 4), False)
    assert tilt_lower_bound(4) == (pytest.approx(PI / 2), False)
    with pytest.raises(BadParameter):
        tilt_lower_bound(2)


def test_gate_threshold_reaches_three_quarters():
    for k in range(9, 40):
        bound, gate = tilt_lower_bound(k)
        assert gate and bound >= 3 * PI / 4


# -- lifting step ------------------------------------------------------------------


def test_normalized_picture():
    q = canonical_quad(PI / 9, 0.75 * PI, 1.0)
    s, p, t, _ = q.vertices
    assert abs(s + 1j) < 1e-12 and abs(p + 1) < 1e-12 and abs(t - 1j) < 1e-12
    assert to_bipolar(NORMAL_FRAME, p).tau == pytest.approx(0, abs=1e-12)
    assert q.orientation == -1


@pytest.mark.parametrize("tilt", [0.75 * PI, 0.8 * PI, 0.9 * PI])
@pytest.mark.parametrize("theta", [PI / 12, PI / 24, 0.2])
def test_admissible_grid_lifts(tilt, theta):
    lo, hi = feasible_gaps(theta, tilt)
    q = canonical_quad(theta, tilt, (lo + min(hi, lo + 4)) / 2)
    pts = admissible_grid(q)
    assert len(pts) == 100
    for r in pts:
        ok, tau_r, tau_p = lift_check(q, r)
        assert ok and tau_r > tau_p
        # independent oracle: above the horizontal diameter means nearer t
        assert r.imag > 0 and tau_by_distance(r) > 0


def test_three_quarter_region_sits_left_of_the_vertical_segment():
    q = canonical_quad(PI / 9, 0.75 * PI, 1.0)
    for r in admissible_grid(q):
        assert r.real < 1e-9 and 0 < r.imag < 1


@given(st.integers(0, 2**31))
def test_lift_check_is_moebius_invariant(seed):
    rng = np.random.default_rng(seed)
    q = canonical_quad(PI / 12, 0.8 * PI, 1.5)
    pts = admissible_grid(q, n=4)
    T = random_transform(rng)
    try:
        img = q.transformed(T)
    except ValueError:
        return
    if max(abs(v) for v in img.vertices) > 1e3:
        return
    for r in pts:
        ok, tr, tp = lift_check(q, r)
        ok2, tr2, tp2 = lift_check(img, apply(T, r))
        assert ok == ok2
        assert tr2 - tp2 == pytest.approx(tr - tp, abs=1e-8)


def test_lift_check_clauses():
    low = canonical_quad(PI / 4, 0.6 * PI, 0.5)
    with pytest.raises(PreconditionViolated) as e:
        lift_check(low, 0.1j)
    assert e.value.clause == "tilt"
    q = canonical_quad(PI / 9, 0.8 * PI, 1.5)
    with pytest.raises(PreconditionViolated) as e:
        lift_check(q, 0.5 - 0.5j)
    assert e.value.clause == "bigon"
    # the mirror image runs s, p, t, q counterclockwise
    mirror = quad_from_sides([DirectedArc(a.start.conjugate(), a.end.conjugate(), -a.bulge) for a in q.sides])
    assert mirror.orientation == 1
    with pytest.raises(PreconditionViolated) as e:
        lift_check(mirror, admissible_grid(q, n=2)[0].conjugate())
    assert e.value.clause == "orientation"


def test_sigma_clause():
    # points of the tq bigon on the right of the vertical line are outside the window
    q = canonical_quad(PI / 20, 0.9 * PI, feasible_gaps(PI / 20, 0.9 * PI)[0] + 1.0)
    hits = 0
    for x in np.linspace(0.05, 0.95, 30):
        for y in np.linspace(0.05, 0.95, 30):
            r = complex(x, y)
            try:
                lift_check(q, r)
            except PreconditionViolated as e:
                hits += e.clause == "sigma"
    assert hits > 0


# -- fan steps -------------------------------------------------------------------


def test_fan_step_ok():
    cfg = two_quad_fan()
    ok, info = fan_step_check(cfg, 0)
    assert ok and info["increment"] > MARGIN
    taus = cfg.taus()
    assert info["increment"] == pytest.approx(taus[1] - taus[0])


def test_fan_step_circle_angle_violation():
    cfg = two_quad_fan(step=4 * PI / 9)
    with pytest.raises(PreconditionViolated) as e:
        fan_step_check(cfg, 0)
    assert e.value.clause == "circle-angle"


def test_fan_step_gate():
    cfg = two_quad_fan(k=8, theta=PI / 8)
    with pytest.raises(PreconditionViolated) as e:
        fan_step_check(cfg, 0)
    assert e.value.clause == "gate"


@given(st.floats(-PI, PI), st.floats(-3, 3))
def test_fan_step_is_invariant_under_focus_fixing_maps(dsigma, dtau):
    cfg = two_quad_fan()
    ok, info = fan_step_check(cfg, 0)
    T = fixing_foci(cfg.frame.s, cfg.frame.t, dsigma, dtau)
    try:
        moved = cfg.transformed(T)
    except ValueError:
        return
    ok2, info2 = fan_step_check(moved, 0)
    assert ok2 == ok
    assert info2["increment"] == pytest.approx(info["increment"], abs=1e-7)


def test_fan_step_survives_general_moebius_maps():
    cfg = two_quad_fan(k=12)
    ok, info = fan_step_check(cfg, 0)
    rng = np.random.default_rng(7)
    done = 0
    for _ in range(20):
        try:
            moved = cfg.transformed(random_transform(rng))
        except ValueError:
            continue
        ok2, info2 = fan_step_check(moved, 0)
        assert ok2 == ok and info2["increment"] == pytest.approx(info["increment"], abs=1e-7)
        done += 1
    assert done > 5


def test_equal_spacing_forces_equal_tilts():
    k, theta = 9, PI / 9
    same = two_quad_fan(k, theta, 0.8 * PI)
    assert spacing_defect(same) < 1e-9
    sig = [q_sigma for q_sigma in (PI / 2, PI / 2 + 2 * PI / k)]
    lo, hi = feasible_gaps(theta, 0.8 * PI)
    gap = (lo + min(hi, lo + 4)) / 2
    mixed = build_fan(k, theta, [0.8 * PI, 0.8 * PI - 0.05], sig, [0.0, 7.0], [gap, gap])
    assert spacing_defect(mixed) > 0.04
    assert max(same.tilts) - min(same.tilts) < 1e-6


def test_place_quad_in_another_frame():
    frame = BipolarFrame(2 + 1j, -3j)
    lo, hi = feasible_gaps(PI / 10, 0.85 * PI)
    q = place_quad(PI / 10, 0.85 * PI, 1.0, 0.5, lo + 1, frame)
    c = to_bipolar(frame, q.vertices[1])
    assert (c.sigma, c.tau) == (pytest.approx(1.0), pytest.approx(0.5))
    assert q.vertices[0] == pytest.approx(frame.s) and q.vertices[2] == pytest.approx(frame.t)


# -- closure search ------------------------------------------------------------


def test_small_search_certifies():
    rep = closure_search(9, PI / 9, budget=450, seed=3)
    assert rep.gate and rep.candidates == 50
    assert rep.min_increment > MARGIN and rep.nonpositive_steps == 0
    assert rep.closed_configurations == 0
    assert rep.min_increment_sum > 0
    assert rep.circle_angle_sum == pytest.approx(2 * PI)
    assert rep.min_circle_angle <= 2 * PI / 9 + 1e-9
    assert "no closed configuration" in rep.verdict


def test_search_is_reproducible_and_worker_independent():
    a = closure_search(10, PI / 20, budget=300, seed=11)
    b = closure_search(10, PI / 20, budget=300, seed=11)
    c = closure_search(10, PI / 20, budget=300, seed=11, workers=2)
    dump = lambda r: json.dumps(r.to_dict(full=True), sort_keys=True)  # noqa: E731
    assert dump(a) == dump(b) == dump(c)


def test_different_seeds_differ():
    a = closure_search(9, PI / 9, budget=90, seed=1).to_dict(full=True)
    b = closure_search(9, PI / 9, budget=90, seed=2).to_dict(full=True)
    assert a["sequences"] != b["sequences"]


def test_gate_not_met_is_exploration_only():
    rep = closure_search(4, PI / 4, budget=40, seed=0)
    assert not rep.gate
    assert "gate not met" in rep.verdict and "no monotonicity claim" in rep.verdict


def test_k8_is_not_claimed():
    rep = closure_search(8, PI / 8, budget=80, seed=0)
    assert not rep.gate and "exploration only" in rep.verdict


def test_search_rejects_bad_parameters():
    with pytest.raises(BadParameter):
        closure_search(2, 1.0)
    with pytest.raises(BadParameter):
        closure_search(9, 4.0)
    with pytest.raises(BadParameter):
        closure_search(9, 0.3, budget=0)


def test_report_schema():
    d = closure_search(9, PI / 9, budget=18, seed=0).to_dict()
    assert d["schema"] == "certify/1" and "sequences" not in d and "workers" not in d
