"""JSON documents for graphs, drawings and quadrilaterals.

Floats are written with 17 significant digits so that a document read back
and written again is byte-identical.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from .arcquad import ArcQuad, quad_from_sides
from .geom import DirectedArc
from .graphs import EmbeddedGraph
from .lombardi import LombardiDrawing

GRAPH_SCHEMA = "graph/1"
DRAWING_SCHEMA = "drawing/1"
QUAD_SCHEMA = "arcquad/1"


class DocumentError(ValueError):
    """A document is malformed or has the wrong schema."""


def _number(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    x = float(x)
    if not math.isfinite(x):
        return "null"
    if x == 0.0:
        return "0.0"
    s = f"{x:.17g}"
    if "e" not in s and "." not in s:
        s += ".0"
    return s


def _is_scalar(v) -> bool:
    return v is None or isinstance(v, (bool, int, float, str))


def _scalar(v) -> str:
    return "null" if v is None else _number(v)


def dumps(obj, indent: int = 2) -> str:
    """Deterministic JSON text with a trailing newline."""
    out = []

    def emit(o, level):
        pad = " " * (indent * (level + 1))
        end = " " * (indent * level)
        if o is None:
            out.append("null")
        elif isinstance(o, (bool, int, float)):
            out.append(_number(o))
        elif isinstance(o, str):
            out.append(json.dumps(o, ensure_ascii=False))
        elif isinstance(o, dict):
            if not o:
                out.append("{}")
                return
            if len(o) <= 3 and all(_is_scalar(v) for v in o.values()):
                items = []
                for k, v in o.items():
                    items.append(json.dumps(str(k)) + ": " + (json.dumps(v) if isinstance(v, str) else _scalar(v)))
                out.append("{" + ", ".join(items) + "}")
                return
            out.append("{\n")
            for i, (k, v) in enumerate(o.items()):
                out.append(pad + json.dumps(str(k)) + ": ")
                emit(v, level + 1)
                out.append(",\n" if i < len(o) - 1 else "\n")
            out.append(end + "}")
        elif isinstance(o, (list, tuple)):
            if not o:
                out.append("[]")
            elif all(_is_scalar(v) and not isinstance(v, str) for v in o):
                out.append("[" + ", ".join(_scalar(v) for v in o) + "]")
            else:
                out.append("[\n")
                for i, v in enumerate(o):
                    out.append(pad)
                    emit(v, level + 1)
                    out.append(",\n" if i < len(o) - 1 else "\n")
                out.append(end + "]")
        else:
            raise TypeError(f"cannot serialize {type(o).__name__}")

    emit(obj, 0)
    return "".join(out) + "\n"


def _require(doc, schema):
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    if doc.get("schema") != schema:
        raise DocumentError(f"expected schema {schema!r}, got {doc.get('schema')!r}")


# ---------------------------------------------------------------------------
# graphs
# ---------------------------------------------------------------------------


def graph_to_doc(g: EmbeddedGraph, faces: bool = False) -> dict:
    idx = g.edge_index
    doc = {
        "schema": GRAPH_SCHEMA,
        "name": g.name,
        "k": g.k,
        "vertices": [{"id": v, "color": c} for v, c in enumerate(g.colors)],
        "edges": [list(e) for e in g.edges],
        "rotation": {str(v): [idx[(v, w)] for w in rot] for v, rot in enumerate(g.rotation)},
    }
    if faces:
        doc["faces"] = [list(f) for f in g.faces]
    return doc


def graph_from_doc(doc) -> EmbeddedGraph:
    _require(doc, GRAPH_SCHEMA)
    try:
        verts = doc["vertices"]
        if [v["id"] for v in verts] != list(range(len(verts))):
            raise DocumentError("vertex ids must be dense from 0")
        edges = [tuple(int(x) for x in e) for e in doc["edges"]]
        if any(len(e) != 2 for e in edges):
            raise DocumentError("each edge needs two endpoints")
        rot = []
        for v in range(len(verts)):
            row = []
            for i in doc["rotation"][str(v)]:
                a, b = edges[i]
                if v not in (a, b):
                    raise DocumentError(f"edge {i} is not incident to vertex {v}")
                row.append(b if a == v else a)
            rot.append(tuple(row))
        return EmbeddedGraph(
            name=str(doc["name"]),
            k=int(doc["k"]),
            colors=tuple(v["color"] for v in verts),
            edges=tuple(edges),
            rotation=tuple(rot),
        )
    except DocumentError:
        raise
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise DocumentError(f"bad graph document: {exc}") from exc


# ---------------------------------------------------------------------------
# drawings
# ---------------------------------------------------------------------------


def drawing_to_doc(d: LombardiDrawing) -> dict:
    return {
        "schema": DRAWING_SCHEMA,
        "graph": graph_to_doc(d.graph),
        "positions": {str(v): [p.real, p.imag] for v, p in enumerate(d.positions)},
        "arcs": [{"edge": i, "bulge": a.bulge} for i, a in enumerate(d.arcs)],
    }


def drawing_from_doc(doc, base: Path | None = None) -> LombardiDrawing:
    """``graph`` may be inline or a path relative to ``base``."""
    _require(doc, DRAWING_SCHEMA)
    try:
        gdoc = doc["graph"]
        if isinstance(gdoc, str):
            path = Path(gdoc) if base is None else base / gdoc
            gdoc = json.loads(path.read_text())
        g = graph_from_doc(gdoc)
        pos = [complex(*doc["positions"][str(v)]) for v in range(g.n)]
        bulges = [None] * len(g.edges)
        for a in doc["arcs"]:
            i = int(a["edge"])
            if bulges[i] is not None:
                raise DocumentError(f"edge {i} has two arcs")
            bulges[i] = float(a["bulge"])
        if None in bulges:
            raise DocumentError(f"edge {bulges.index(None)} has no arc")
        return LombardiDrawing.from_bulges(g, pos, bulges)
    except DocumentError:
        raise
    except (KeyError, IndexError, TypeError, ValueError, OSError) as exc:
        raise DocumentError(f"bad drawing document: {exc}") from exc


# ---------------------------------------------------------------------------
# quadrilaterals
# ---------------------------------------------------------------------------


def quad_to_doc(q: ArcQuad) -> dict:
    c = q.circle
    return {
        "schema": QUAD_SCHEMA,
        "vertices": [[v.real, v.imag] for v in q.vertices],
        "bulges": [s.bulge for s in q.sides],
        "theta": q.theta,
        "bigons": list(q.bigons),
        "tilt": q.tilt,
        "circle": {"A": c.A, "B": [c.B.real, c.B.imag], "C": c.C},
        "inside": q.inside,
        "orientation": q.orientation,
    }


def quad_from_doc(doc, tol: float) -> ArcQuad:
    _require(doc, QUAD_SCHEMA)
    try:
        vs = [complex(*v) for v in doc["vertices"]]
        bs = [float(b) for b in doc["bulges"]]
        if len(vs) != 4 or len(bs) != 4:
            raise DocumentError("a quadrilateral needs four vertices and four bulges")
        sides = [DirectedArc(vs[i], vs[(i + 1) % 4], bs[i]) for i in range(4)]
    except DocumentError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"bad quadrilateral document: {exc}") from exc
    return quad_from_sides(sides, tol)
