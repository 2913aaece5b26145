"""Numerical harness for the nonexistence argument.

A fan is k equiangular quads s p_i t q_i sharing the opposite vertices s, t.
In the bipolar frame of (s, t) each circumcircle C_i is a sigma-level circle,
so the fan is described by the sigma levels of the C_i, a common tilt, and
the tau coordinates of p_i and q_i.  The lifting step says that when p_{i+1}
sits in the bigon cut off by side tq_i and the tilt is large, its tau
coordinate exceeds that of p_i.  Around a closed fan that cannot happen k
times in a row, and the search below looks for configurations where it does.

Nothing here is a proof.  The harness samples, measures and reports.
"""

from __future__ import annotations

import cmath
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .arcquad import ArcQuad, build_from_circle
from .bipolar import BipolarCoord, BipolarFrame, from_bipolar, sigma_tangent, to_bipolar
from .errors import BadParameter, GeometryError, PreconditionViolated
from .geom import TAU, GeneralizedCircle, angle_mod, wrap_angle
from .moebius import MoebiusTransform, apply, compose, fixing_foci, normalize_to

MARGIN = 1e-8  # tau increments at or below this are inconclusive
LIFT_TILT = 0.75 * math.pi
NORMAL_FRAME = BipolarFrame(-1j, 1j)
GAUGE_OFFSETS = (0.0, 1.0, -1.0, 2.0, -2.0)


def tilt_lower_bound(k: int):
    """Return ``(pi*(1 - 2/k), k > 8)``."""
    if not isinstance(k, (int, np.integer)) or k < 3:
        raise BadParameter(f"k must be an integer >= 3, got {k!r}")
    return math.pi * (1.0 - 2.0 / k), bool(k > 8)


# ---------------------------------------------------------------------------
# Lifting step
# ---------------------------------------------------------------------------


def _bigon_position(side, other, z):
    """Signed angular position of ``z`` relative to the bigon of ``side``.

    Returns ``(a, w)``: ``w`` is the signed bigon angle and ``a`` the angle of
    ``z`` measured from the circle arc, both in the side's chord frame.  The
    point is inside the bigon iff ``a`` and ``w`` share a sign and |a| < |w|.
    """
    psi_c = wrap_angle(cmath.phase(side.ratio(other)) + math.pi)
    a = wrap_angle(cmath.phase(side.ratio(z)) - psi_c)
    w = wrap_angle(side.psi - psi_c)
    return a, w


def in_bigon(side, other, z) -> bool:
    a, w = _bigon_position(side, other, z)
    return a * w > 0 and abs(a) < abs(w)


def lift_check(quad: ArcQuad, r, tol: float = 1e-9):
    """Check the lifting step for ``r`` against ``quad`` read as s, p, t, q.

    Returns ``(ok, tau_r, tau_p)`` with ``ok = tau_r > tau_p``.  Raises
    PreconditionViolated naming the clause that failed: ``"tilt"``,
    ``"orientation"``, ``"bigon"`` or ``"sigma"``.
    """
    s, p, t, q = quad.vertices
    phi_sp, phi_pt = quad.bigons[0], quad.bigons[1]
    if phi_sp < LIFT_TILT - tol or phi_sp < phi_pt - tol:
        raise PreconditionViolated(
            "tilt", f"bigon angle on sides sp, tq is {phi_sp:.6g}; need >= 3pi/4 and the larger one"
        )
    if quad.orientation != -1:
        raise PreconditionViolated("orientation", "s, p, t, q must run clockwise around the quad")
    r = complex(r)
    if not in_bigon(quad.sides[2], p, r):
        raise PreconditionViolated("bigon", "r is not inside the bigon of side tq")
    frame = BipolarFrame(s, t)
    cr, cp = to_bipolar(frame, r), to_bipolar(frame, p)
    if abs(wrap_angle(cr.sigma - cp.sigma)) > math.pi / 2 + tol:
        raise PreconditionViolated("sigma", "arc s r t makes more than pi/2 with arc s p t")
    return cr.tau > cp.tau, cr.tau, cp.tau


# ---------------------------------------------------------------------------
# Fans
# ---------------------------------------------------------------------------


@lru_cache(maxsize=4096)
def canonical_quad(theta: float, tilt: float, gap: float) -> ArcQuad:
    """Quad on the unit circle with s=-i, p=-1, t=i and tau(q) = ``gap``."""
    q = from_bipolar(NORMAL_FRAME, BipolarCoord(-math.pi / 2, gap))
    positions = [-math.pi / 2, math.pi, math.pi / 2, cmath.phase(q)]
    return build_from_circle(GeneralizedCircle.from_center_radius(0, 1), positions, theta, tilt)


def _feasible(theta, tilt, gap) -> bool:
    try:
        canonical_quad(theta, tilt, gap)
    except GeometryError:
        return False
    return True


@lru_cache(maxsize=256)
def feasible_gaps(theta: float, tilt: float, lo: float = -8.0, hi: float = 8.0, n: int = 161):
    """Interval of tau(q) - tau(p) giving a simple quad, or None.

    Takes the longest run of feasible values on a grid and sharpens both ends
    by bisection.  An end stuck at the grid edge is left there.
    """
    grid = np.linspace(lo, hi, n)
    ok = [_feasible(theta, tilt, float(g)) for g in grid]
    best, run = None, None
    for i, flag in enumerate(ok + [False]):
        if flag and run is None:
            run = i
        elif not flag and run is not None:
            if best is None or i - run > best[1] - best[0]:
                best = (run, i)
            run = None
    if best is None:
        return None
    i0, i1 = best

    def sharpen(good, bad):
        for _ in range(40):
            mid = 0.5 * (good + bad)
            if _feasible(theta, tilt, mid):
                good = mid
            else:
                bad = mid
        return good

    g_lo = float(grid[i0]) if i0 == 0 else sharpen(float(grid[i0]), float(grid[i0 - 1]))
    g_hi = float(grid[i1 - 1]) if i1 == n else sharpen(float(grid[i1 - 1]), float(grid[i1]))
    return g_lo, g_hi


@dataclass(frozen=True)
class FanConfig:
    k: int
    frame: BipolarFrame
    theta: float
    quads: tuple

    @property
    def circles(self) -> tuple:
        return tuple(q.circle for q in self.quads)

    @property
    def tilts(self) -> tuple:
        return tuple(q.tilt for q in self.quads)

    def taus(self) -> list:
        return [to_bipolar(self.frame, q.vertices[1]).tau for q in self.quads]

    def circle_angles(self) -> list:
        """Counterclockwise angles at s between consecutive circles (cyclic)."""
        sig = [to_bipolar(self.frame, q.vertices[1]).sigma for q in self.quads]
        n = len(sig)
        return [angle_mod(sig[(i + 1) % n] - sig[i]) for i in range(n)]

    def transformed(self, T: MoebiusTransform) -> "FanConfig":
        frame = BipolarFrame(apply(T, self.frame.s), apply(T, self.frame.t))
        return FanConfig(self.k, frame, self.theta, tuple(q.transformed(T) for q in self.quads))


def place_quad(theta, tilt, sigma, tau_p, gap, frame: BipolarFrame = NORMAL_FRAME) -> ArcQuad:
    """Quad with p at bipolar (sigma, tau_p) and q at (sigma - pi, tau_p + gap)."""
    quad = canonical_quad(float(theta), float(tilt), float(gap))
    T = fixing_foci(NORMAL_FRAME.s, NORMAL_FRAME.t, sigma - math.pi / 2, tau_p)
    if frame != NORMAL_FRAME:
        S = normalize_to(NORMAL_FRAME.s, NORMAL_FRAME.t, 0, frame.s, frame.t, (frame.s + frame.t) / 2)
        T = compose(S, T)
    return quad.transformed(T)


def build_fan(k, theta, tilts, sigmas, taus, gaps, frame: BipolarFrame = NORMAL_FRAME) -> FanConfig:
    """Assemble a fan (or a prefix of one) quad by quad."""
    n = len(sigmas)
    if isinstance(tilts, (int, float)):
        tilts = [float(tilts)] * n
    if not (len(tilts) == len(taus) == len(gaps) == n):
        raise BadParameter("per-quad parameter lists differ in length")
    quads = tuple(place_quad(theta, tilts[i], sigmas[i], taus[i], gaps[i], frame) for i in range(n))
    return FanConfig(int(k), frame, float(theta), quads)


def spacing_defect(cfg: FanConfig, inner_gap: float | None = None) -> float:
    """Largest deviation from the equal-spacing pattern at the two foci.

    At each focus consecutive quads must be 2pi/k apart and each quad must
    span the interior angle.  ``inner_gap`` defaults to ``theta``.
    """
    span = cfg.theta if inner_gap is None else inner_gap
    worst = 0.0
    f = cfg.frame
    for focus, near, far in ((f.s, 0, 3), (f.t, 1, 2)):
        first = [sigma_tangent(f, q.sides[near], focus) for q in cfg.quads]
        second = [sigma_tangent(f, q.sides[far], focus) for q in cfg.quads]
        for i, q in enumerate(cfg.quads):
            worst = max(worst, abs(abs(wrap_angle(second[i] - first[i])) - span))
            if i + 1 < len(cfg.quads):
                step = abs(wrap_angle(first[i + 1] - first[i]))
                worst = max(worst, abs(step - TAU / cfg.k))
    return worst


def fan_step_check(cfg: FanConfig, i: int, tol: float = 1e-9):
    """Run the lifting step from quad ``i`` to quad ``i + 1`` (cyclically).

    Returns ``(ok, details)``; ``ok`` means the tau increment exceeds MARGIN.
    """
    _, gate = tilt_lower_bound(cfg.k)
    if not gate:
        raise PreconditionViolated("gate", f"k = {cfg.k} is outside the certified regime k > 8")
    n = len(cfg.quads)
    qi, qj = cfg.quads[i % n], cfg.quads[(i + 1) % n]
    f = cfg.frame
    angle = angle_mod(to_bipolar(f, qj.vertices[1]).sigma - to_bipolar(f, qi.vertices[1]).sigma)
    if angle > 3 * math.pi / cfg.k + tol:
        raise PreconditionViolated("circle-angle", f"consecutive circles meet at {angle:.6g} > 3pi/k")
    ok, tau_r, tau_p = lift_check(qi, qj.vertices[1], tol)
    inc = tau_r - tau_p
    return inc > MARGIN, {
        "tau_p": tau_p,
        "tau_next": tau_r,
        "increment": inc,
        "circle_angle": angle,
        "tilt": qi.tilt,
    }


# ---------------------------------------------------------------------------
# Closure search
# ---------------------------------------------------------------------------


def _admissible_taus(quad: ArcQuad, sigma: float, frame: BipolarFrame = NORMAL_FRAME):
    """Tau interval of the sigma-arc inside the bigon of side tq.

    Works in the coordinate zeta = (z - s)/(t - z), where the sigma-arc is a
    ray from 0 and side tq is a ray ending at infinity.  Returns (lo, hi)
    with infinite ends allowed, or None.
    """
    Z = frame.zeta_map()
    side, p = quad.sides[2], quad.vertices[1]
    zq = apply(Z, side.end)
    direction = apply(Z, side.midpoint()) - zq
    u = cmath.exp(1j * (math.pi - sigma))
    # zq + a*direction = rho*u with a >= 0, rho > 0
    m = np.array([[direction.real, -u.real], [direction.imag, -u.imag]])
    crossing = None
    if abs(np.linalg.det(m)) > 1e-14:
        a, rho = np.linalg.solve(m, [-zq.real, -zq.imag])
        if a > 0 and rho > 0:
            crossing = math.log(rho)

    def inside(tau):
        return in_bigon(side, p, from_bipolar(frame, BipolarCoord(sigma, tau)))

    if crossing is None:
        return (-math.inf, math.inf) if inside(0.0) else None
    above, below = inside(crossing + 0.5), inside(crossing - 0.5)
    if above and not below:
        return crossing, math.inf
    if below and not above:
        return -math.inf, crossing
    return None


def admissible_grid(quad: ArcQuad, n: int = 10, span: float = 3.0, scan: int = 400) -> list:
    """An ``n`` x ``n`` grid of points meeting the lifting-step preconditions.

    Rows are sigma levels within pi/2 of sigma(p) whose arc meets the bigon
    of side tq; along each level the tau values run over the admissible
    interval (capped at ``span`` past a finite end).  Works in any frame.
    """
    s, p, t, _ = quad.vertices
    frame = BipolarFrame(s, t)
    sp = to_bipolar(frame, p).sigma
    levels = []
    for x in np.linspace(-math.pi / 2, math.pi / 2, scan + 2)[1:-1]:
        sig = wrap_angle(sp + float(x))
        window = _admissible_taus(quad, sig, frame)
        if window is not None:
            levels.append((sig, window))
    if not levels:
        return []
    picks = [levels[int(round(i))] for i in np.linspace(0, len(levels) - 1, n)]
    pts = []
    for sig, (lo, hi) in picks:
        if not math.isfinite(lo):
            lo = hi - span
        if not math.isfinite(hi):
            hi = lo + span
        for u in np.linspace(0.0, 1.0, n + 2)[1:-1]:
            pts.append(from_bipolar(frame, BipolarCoord(sig, float(lo + (hi - lo) * u))))
    return pts


@dataclass
class CandidateResult:
    index: int
    tilt: float
    increments: list
    clauses: list
    closed: bool
    closing_clause: str | None
    circle_angles: list


def _run_candidate(args) -> CandidateResult:
    k, theta, seed, index, tilt, span = args
    rng = np.random.default_rng([seed, index])
    gaps = feasible_gaps(theta, tilt)
    increments, clauses = [], []
    closed, closing = False, "infeasible"
    if gaps is None:
        return CandidateResult(index, tilt, increments, ["infeasible"], False, closing, [])
    g_lo, g_hi = gaps
    g_hi = min(g_hi, g_lo + 6.0)

    def draw_gap():
        return float(g_lo + (g_hi - g_lo) * rng.uniform(0.001, 0.999))

    # Each step runs in a gauge where the current quad has tau(p) = offset,
    # a small value chosen so that no vertex lands on infinity.  Focus-fixing
    # maps shift tau, so only differences matter, and the quads stay away
    # from the foci.  ``total`` is tau(p_j) - tau(p_1) in the fan's gauge.
    step = TAU / k
    sigmas = [wrap_angle(math.pi / 2 + j * step) for j in range(k)]

    def regauge(sigma, gap):
        for offset in GAUGE_OFFSETS:
            try:
                return offset, place_quad(theta, tilt, sigma, offset, gap)
            except GeometryError:
                continue
        raise GeometryError("no gauge places this quad")

    try:
        offset, current = regauge(sigmas[0], draw_gap())
    except GeometryError:
        return CandidateResult(index, tilt, [], ["unplaceable"], False, "infeasible", [])
    total, placed = 0.0, 1
    for j in range(1, k):
        window = _admissible_taus(current, sigmas[j])
        if window is None:
            clauses.append("empty-bigon")
            break
        lo, hi = window
        if not math.isfinite(lo):
            lo = (hi if math.isfinite(hi) else offset) - span
        if not math.isfinite(hi):
            hi = lo + span
        for _attempt in range(8):
            tau = float(lo + (hi - lo) * rng.uniform(0.001, 1.0))
            gap = draw_gap()
            try:
                nxt = place_quad(theta, tilt, sigmas[j], tau, gap)
                new_offset, regauged = regauge(sigmas[j], gap)
            except GeometryError:
                continue
            break
        else:
            clauses.append("unplaceable")
            break
        try:
            _, tau_r, tau_p = lift_check(current, nxt.vertices[1])
            clauses.append("ok")
        except PreconditionViolated as exc:
            clauses.append(exc.clause)
            tau_r, tau_p = tau, offset
        increments.append(tau_r - tau_p)
        total += tau - offset
        current, offset, placed = regauged, new_offset, placed + 1
    else:
        p_first = from_bipolar(NORMAL_FRAME, BipolarCoord(sigmas[0], offset - total))
        try:
            lift_check(current, p_first)
            closed, closing = True, None
        except PreconditionViolated as exc:
            closing = exc.clause
    cfg_angles = [angle_mod(sigmas[(j + 1) % k] - sigmas[j]) for j in range(placed)]
    return CandidateResult(index, tilt, increments, clauses, closed, closing, cfg_angles)


@dataclass
class SearchReport:
    k: int
    theta: float
    budget: int
    seed: int
    workers: int
    tilt_lower_bound: float
    gate: bool
    tilt_grid: list
    candidates: int
    steps: int
    steps_certified: int
    precondition_failures: dict
    min_increment: float | None
    inconclusive_steps: int
    nonpositive_steps: int
    min_increment_sum: float | None
    closed_configurations: int
    closing_clauses: dict
    min_circle_angle: float | None
    circle_angle_sum: float | None
    verdict: str
    sequences: list = field(default_factory=list)

    def to_dict(self, full: bool = False) -> dict:
        d = {
            "schema": "certify/1",
            "k": self.k,
            "theta": self.theta,
            "budget": self.budget,
            "seed": self.seed,
            "tilt_lower_bound": self.tilt_lower_bound,
            "gate": self.gate,
            "tilt_grid": self.tilt_grid,
            "candidates": self.candidates,
            "steps": self.steps,
            "steps_certified": self.steps_certified,
            "precondition_failures": self.precondition_failures,
            "min_increment": self.min_increment,
            "inconclusive_steps": self.inconclusive_steps,
            "nonpositive_steps": self.nonpositive_steps,
            "min_increment_sum": self.min_increment_sum,
            "closed_configurations": self.closed_configurations,
            "closing_clauses": self.closing_clauses,
            "min_circle_angle": self.min_circle_angle,
            "circle_angle_sum": self.circle_angle_sum,
            "verdict": self.verdict,
        }
        if full:
            d["sequences"] = self.sequences
        return d


def closure_search(
    k: int,
    theta: float,
    budget: int = 10_000,
    seed: int = 0,
    workers: int = 1,
    n_tilts: int = 8,
    span: float = 3.0,
) -> SearchReport:
    """Sample fans step by step and look for one that closes up.

    ``budget`` counts fan steps; each candidate fan uses ``k`` of them (k - 1
    lifting steps plus the closing test).  Tilts run over a grid from the
    lower bound to just below ``pi - theta``; everything else is drawn from a
    generator seeded by ``(seed, candidate index)``, so the report does not
    depend on ``workers``.
    """
    if not isinstance(k, (int, np.integer)) or k < 3:
        raise BadParameter(f"k must be an integer >= 3, got {k!r}")
    if not 0 < theta < math.pi:
        raise BadParameter("theta must lie in (0, pi)")
    if budget < 1 or workers < 1:
        raise BadParameter("budget and workers must be positive")
    lower, gate = tilt_lower_bound(k)
    top = math.pi - theta
    lo = min(max(lower, 1e-3), top)
    tilts = [float(x) for x in np.linspace(lo, top, n_tilts + 2)[1:-1]] if top > lo else []
    n_cand = max(1, budget // k)
    jobs = [(k, float(theta), int(seed), i, tilts[i % len(tilts)] if tilts else lo, span) for i in range(n_cand)]
    if workers == 1:
        results = [_run_candidate(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_candidate, jobs, chunksize=max(1, n_cand // (4 * workers))))
    return _summarize(k, theta, budget, seed, workers, lower, gate, tilts, results)


def _summarize(k, theta, budget, seed, workers, lower, gate, tilts, results) -> SearchReport:
    fails = Counter()
    closing = Counter()
    certified, steps, inconclusive, nonpositive = [], 0, 0, 0
    sums, angles, sequences = [], [], []
    closed = 0
    for res in results:
        sequences.append({"tilt": res.tilt, "increments": res.increments, "clauses": res.clauses})
        for inc, clause in zip(res.increments, res.clauses):
            steps += 1
            if clause != "ok":
                fails[clause] += 1
                continue
            certified.append(inc)
            if inc <= 0:
                nonpositive += 1
            elif inc <= MARGIN:
                inconclusive += 1
        for clause in res.clauses[len(res.increments):]:
            fails[clause] += 1
        if res.increments and all(c == "ok" for c in res.clauses):
            sums.append(sum(res.increments))
        if res.closing_clause is not None:
            closing[res.closing_clause] += 1
        closed += int(res.closed)
        if len(res.circle_angles) == k:
            angles.append(res.circle_angles)
    min_inc = min(certified) if certified else None
    min_angle = min(min(a) for a in angles) if angles else None
    angle_sum = max(sum(a) for a in angles) if angles else None
    if not gate:
        verdict = f"gate not met (k = {k} <= 8): exploration only, no monotonicity claim"
    elif nonpositive:
        verdict = f"{nonpositive} lifting steps with non-positive tau increment"
    elif closed:
        verdict = f"{closed} closed configurations found"
    elif not certified:
        verdict = "no lifting step met the preconditions"
    else:
        verdict = (
            f"all {len(certified)} lifting steps increased tau (min {min_inc:.3e}); "
            "no closed configuration found"
        )
    return SearchReport(
        k=int(k),
        theta=float(theta),
        budget=int(budget),
        seed=int(seed),
        workers=int(workers),
        tilt_lower_bound=lower,
        gate=gate,
        tilt_grid=tilts,
        candidates=len(results),
        steps=steps,
        steps_certified=len(certified),
        precondition_failures=dict(sorted(fails.items())),
        min_increment=min_inc,
        inconclusive_steps=inconclusive,
        nonpositive_steps=nonpositive,
        min_increment_sum=min(sums) if sums else None,
        closed_configurations=closed,
        closing_clauses=dict(sorted(closing.items())),
        min_circle_angle=min_angle,
        circle_angle_sum=angle_sum,
        verdict=verdict,
        sequences=sequences,
    )
