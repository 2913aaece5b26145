"""Lombardi drawings: data model, validation and SVG output.

A Lombardi drawing places every vertex at a point and draws every edge as a
circular arc (or segment) so that the edges leave each vertex at equally
spaced angles.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from .geom import (
    DEFAULT_TOL,
    TAU,
    DirectedArc,
    Overlap,
    as_point,
    intersect,
    outgoing_direction,
)
from .graphs import EmbeddedGraph
from .moebius import MoebiusTransform, apply, apply_to_arc

ANGLE_TOL = 1e-6


@dataclass(frozen=True)
class LombardiDrawing:
    """Positions per vertex id and one arc per edge, oriented from the lower id."""

    graph: EmbeddedGraph
    positions: tuple
    arcs: tuple

    def __post_init__(self):
        g = self.graph
        if len(self.positions) != g.n:
            raise ValueError("need one position per vertex")
        if len(self.arcs) != len(g.edges):
            raise ValueError("need one arc per edge")
        pos = tuple(complex(as_point(p)) for p in self.positions)
        object.__setattr__(self, "positions", pos)
        scale = max([1.0] + [abs(p) for p in pos])
        for i, ((u, v), arc) in enumerate(zip(g.edges, self.arcs)):
            a, b = (u, v) if u < v else (v, u)
            if abs(arc.start - pos[a]) > 1e-9 * scale or abs(arc.end - pos[b]) > 1e-9 * scale:
                raise ValueError(f"arc of edge {i} does not join the positions of {a} and {b}")

    @classmethod
    def from_bulges(cls, graph: EmbeddedGraph, positions, bulges) -> "LombardiDrawing":
        pos = [complex(p) for p in positions]
        arcs = []
        for (u, v), b in zip(graph.edges, bulges):
            a, c = (u, v) if u < v else (v, u)
            arcs.append(DirectedArc(pos[a], pos[c], b))
        return cls(graph, tuple(pos), tuple(arcs))

    def incident(self, v: int) -> list:
        """(edge index, arc) pairs at ``v``."""
        out = []
        for w in self.graph.rotation[v]:
            i = self.graph.edge_index[(v, w)]
            out.append((i, self.arcs[i]))
        return out

    def directions(self, v: int) -> dict:
        """Outgoing tangent direction at ``v`` for each neighbor."""
        p = self.positions[v]
        return {w: outgoing_direction(arc, p, 1e-7) for w, (_, arc) in zip(self.graph.rotation[v], self.incident(v))}

    def transformed(self, T: MoebiusTransform) -> "LombardiDrawing":
        pos = tuple(apply(T, p) for p in self.positions)
        return LombardiDrawing(self.graph, pos, tuple(apply_to_arc(T, a) for a in self.arcs))


@dataclass
class ValidationReport:
    lombardi_ok: bool
    planar_ok: bool
    embedding_ok: bool
    mirrored: bool
    max_deviation: float
    deviations: list
    crossings: list
    rotation_mismatches: list
    coincident: list
    angular_resolution: float
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.lombardi_ok and self.planar_ok and self.embedding_ok and not self.coincident

    def to_dict(self) -> dict:
        return {
            "schema": "report/1",
            "ok": self.ok,
            "lombardi_ok": self.lombardi_ok,
            "planar_ok": self.planar_ok,
            "embedding_ok": self.embedding_ok,
            "mirrored": self.mirrored,
            "max_deviation": self.max_deviation,
            "deviations": self.deviations,
            "crossings": [list(c) for c in self.crossings],
            "rotation_mismatches": self.rotation_mismatches,
            "coincident": [list(c) for c in self.coincident],
            "angular_resolution": self.angular_resolution,
            "notes": self.notes,
        }


def _gaps(dirs) -> list:
    if len(dirs) < 2:
        return [TAU] if dirs else []
    s = sorted(d % TAU for d in dirs)
    return [b - a for a, b in zip(s, s[1:])] + [s[0] + TAU - s[-1]]


def _spacing_deviation(dirs) -> float:
    d = len(dirs)
    if d < 2:
        return 0.0
    return max(abs(g - TAU / d) for g in _gaps(dirs))


def angular_resolution(d: LombardiDrawing) -> float:
    """Smallest angle between consecutive edges at any vertex (2pi if none)."""
    best = TAU
    for v in range(d.graph.n):
        dirs = list(d.directions(v).values())
        if len(dirs) >= 2:
            best = min(best, min(_gaps(dirs)))
    return best


def arc_bbox(arc: DirectedArc) -> tuple:
    """Exact axis-aligned bounding box (xmin, ymin, xmax, ymax)."""
    pts = [arc.start, arc.end]
    if arc.bulge != 0.0:
        c, r = arc.center, arc.radius
        for k in range(4):
            z = c + r * complex(math.cos(k * math.pi / 2), math.sin(k * math.pi / 2))
            if arc.locate(z, 1e-12) == "interior":
                pts.append(z)
    xs = [p.real for p in pts]
    ys = [p.imag for p in pts]
    return min(xs), min(ys), max(xs), max(ys)


def _candidate_pairs(arcs, pad: float):
    boxes = [arc_bbox(a) for a in arcs]
    order = sorted(range(len(arcs)), key=lambda i: boxes[i][0])
    active = []
    for i in order:
        x0, y0, x1, y1 = boxes[i]
        active = [j for j in active if boxes[j][2] >= x0 - pad]
        for j in active:
            bx0, by0, bx1, by1 = boxes[j]
            if by0 <= y1 + pad and y0 <= by1 + pad:
                yield (min(i, j), max(i, j))
        active.append(i)


def find_crossings(d: LombardiDrawing, tol: float = DEFAULT_TOL) -> list:
    """Sorted pairs of edge indices whose arcs meet anywhere but a shared end."""
    g = d.graph
    scale = max([1.0] + [abs(p) for p in d.positions])
    out = []
    for i, j in _candidate_pairs(d.arcs, 10 * tol * scale):
        shared = set(g.edges[i]) & set(g.edges[j])
        hits = intersect(d.arcs[i], d.arcs[j], tol)
        if isinstance(hits, Overlap):
            out.append((i, j))
            continue
        for h in hits:
            at_shared = any(abs(h.point - d.positions[v]) <= 1e-7 * scale for v in shared)
            if not at_shared:
                out.append((i, j))
                break
    return sorted(out)


def _cyclic_equal(a, b) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    try:
        i = b.index(a[0])
    except ValueError:
        return False
    return list(b[i:]) + list(b[:i]) == list(a)


def _rotation_status(d: LombardiDrawing):
    direct, mirror = [], []
    for v in range(d.graph.n):
        rot = list(d.graph.rotation[v])
        if len(rot) < 3:
            continue
        dirs = d.directions(v)
        drawn = sorted(rot, key=lambda w: dirs[w] % TAU)
        if not _cyclic_equal(drawn, rot):
            direct.append(v)
        if not _cyclic_equal(drawn[::-1], rot):
            mirror.append(v)
    return direct, mirror


def validate(d: LombardiDrawing, tol: float = ANGLE_TOL) -> ValidationReport:
    g = d.graph
    scale = max([1.0] + [abs(p) for p in d.positions])
    coincident = []
    order = sorted(range(g.n), key=lambda v: (d.positions[v].real, d.positions[v].imag))
    for a_idx, u in enumerate(order):
        for v in order[a_idx + 1:]:
            if d.positions[v].real - d.positions[u].real > 1e-9 * scale:
                break
            if abs(d.positions[u] - d.positions[v]) <= 1e-9 * scale:
                coincident.append((min(u, v), max(u, v)))
    coincident.sort()
    notes = []
    if coincident:
        notes.append("coincident vertex positions; angle and rotation checks skip them")
    skip = {v for pair in coincident for v in pair}
    deviations = []
    for v in range(g.n):
        if v in skip:
            deviations.append(0.0)
            continue
        deviations.append(_spacing_deviation(list(d.directions(v).values())))
    max_dev = max(deviations, default=0.0)
    crossings = find_crossings(d)
    direct, mirror = _rotation_status(d)
    direct = [v for v in direct if v not in skip]
    mirror = [v for v in mirror if v not in skip]
    if not direct:
        embedding_ok, mirrored, mismatches = True, False, []
    elif not mirror:
        embedding_ok, mirrored, mismatches = True, True, []
        notes.append("drawing realizes the mirror image of the embedding")
    else:
        embedding_ok, mirrored = False, False
        mismatches = direct if len(direct) <= len(mirror) else mirror
    return ValidationReport(
        lombardi_ok=max_dev <= tol,
        planar_ok=not crossings,
        embedding_ok=embedding_ok,
        mirrored=mirrored,
        max_deviation=max_dev,
        deviations=deviations,
        crossings=crossings,
        rotation_mismatches=sorted(mismatches),
        coincident=coincident,
        angular_resolution=angular_resolution(d),
        notes=notes,
    )


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------

PALETTES = {
    "paper": {"yellow": "#f2c230", "blue": "#2b6cb0", "red": "#c53030"},
    "mono": {"yellow": "#ffffff", "blue": "#808080", "red": "#000000"},
}


@dataclass(frozen=True)
class StyleOptions:
    width: int = 600
    height: int = 600
    margin: float = 20.0
    vertex_radius: float = 4.0
    stroke_width: float = 1.5
    edge_color: str = "#333333"
    palette: str = "paper"
    background: str | None = "#ffffff"


def _fmt(x: float) -> str:
    # shortest round-trip form; the reader needs the exact radius near semicircles
    x = float(x)
    if abs(x) < 1e15 and x == int(x):
        return str(int(x))
    return repr(x)


def _path_data(arc: DirectedArc) -> str:
    s, e = arc.start, arc.end
    head = f"M {_fmt(s.real)} {_fmt(s.imag)}"
    if arc.bulge == 0.0 or not math.isfinite(arc.radius):
        return f"{head} L {_fmt(e.real)} {_fmt(e.imag)}"
    large = 1 if abs(arc.sweep) > math.pi else 0
    sweep = 1 if arc.sweep > 0 else 0
    r = _fmt(arc.radius)
    return f"{head} A {r} {r} 0 {large} {sweep} {_fmt(e.real)} {_fmt(e.imag)}"


def render_svg(d: LombardiDrawing, style: StyleOptions | None = None) -> str:
    """SVG 1.1 text; the drawing sits in world coordinates inside a y-flipping group."""
    style = style or StyleOptions()
    palette = PALETTES.get(style.palette)
    if palette is None:
        raise ValueError(f"unknown palette {style.palette!r}")
    boxes = [arc_bbox(a) for a in d.arcs] + [(p.real, p.imag, p.real, p.imag) for p in d.positions]
    if boxes:
        x0 = min(b[0] for b in boxes)
        y0 = min(b[1] for b in boxes)
        x1 = max(b[2] for b in boxes)
        y1 = max(b[3] for b in boxes)
    else:
        x0 = y0 = -1.0
        x1 = y1 = 1.0
    w = max(x1 - x0, 1e-9)
    h = max(y1 - y0, 1e-9)
    scale = min((style.width - 2 * style.margin) / w, (style.height - 2 * style.margin) / h)
    tx = style.width / 2 - scale * (x0 + x1) / 2
    ty = style.height / 2 + scale * (y0 + y1) / 2
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{style.width}" height="{style.height}" '
        f'viewBox="0 0 {style.width} {style.height}">',
        f"<title>{escape(d.graph.name)}</title>",
    ]
    if style.background:
        out.append(f'<rect width="{style.width}" height="{style.height}" fill="{style.background}"/>')
    out.append(f'<g transform="matrix({_fmt(scale)} 0 0 {_fmt(-scale)} {_fmt(tx)} {_fmt(ty)})">')
    out.append(
        f'<g fill="none" stroke="{style.edge_color}" stroke-width="{_fmt(style.stroke_width)}" '
        'vector-effect="non-scaling-stroke">'
    )
    for i, arc in enumerate(d.arcs):
        out.append(f'<path data-edge="{i}" d="{_path_data(arc)}" vector-effect="non-scaling-stroke"/>')
    out.append("</g>")
    rad = style.vertex_radius / scale
    for v, p in enumerate(d.positions):
        color = palette[d.graph.colors[v]]
        out.append(
            f'<circle data-vertex="{v}" class="{d.graph.colors[v]}" cx="{_fmt(p.real)}" cy="{_fmt(p.imag)}" '
            f'r="{_fmt(rad)}" fill="{color}" stroke="#000000" stroke-width="0.5" vector-effect="non-scaling-stroke"/>'
        )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


_PATH = re.compile(r'<path data-edge="(\d+)" d="([^"]+)"')


def read_svg_arcs(svg: str) -> dict:
    """Recover ``{edge index: DirectedArc}`` from :func:`render_svg` output."""
    out = {}
    for idx, data in _PATH.findall(svg):
        tok = data.split()
        start = complex(float(tok[1]), float(tok[2]))
        if tok[3] == "L":
            out[int(idx)] = DirectedArc(start, complex(float(tok[4]), float(tok[5])), 0.0)
            continue
        r, large, sweep = float(tok[4]), int(tok[7]), int(tok[8])
        end = complex(float(tok[9]), float(tok[10]))
        half = math.asin(min(1.0, abs(end - start) / (2 * r)))
        central = 2 * half if not large else TAU - 2 * half
        signed = central if sweep else -central
        out[int(idx)] = DirectedArc(start, end, -math.tan(signed / 4))
    return out
