"""Command-line front end.

Exit codes: 0 success or valid, 1 checked and found invalid, 2 usage or I/O
error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from . import arcquad as aq
from .certify import closure_search
from .errors import (
    BadParameter,
    ConstructionInfeasible,
    GeometryError,
    LombardiError,
    NotCyclic,
    NotEquiangular,
    QuadError,
)
from .formats import (
    DocumentError,
    drawing_from_doc,
    dumps,
    graph_to_doc,
    quad_from_doc,
    quad_to_doc,
)
from .geom import GeneralizedCircle
from .graphs import FAMILIES
from .lombardi import ANGLE_TOL, PALETTES, StyleOptions, render_svg, validate

OK, INVALID, ERROR = 0, 1, 2
TOL_ENV = "LOMBARDI_TOL"


class UsageError(Exception):
    pass


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _read_json(path: str):
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def _write(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def resolve_tol(flag: float | None, default: float = ANGLE_TOL) -> float:
    """Flag beats the environment variable, which beats the default."""
    if flag is not None:
        return flag
    env = os.environ.get(TOL_ENV)
    if env:
        try:
            return float(env)
        except ValueError:
            raise UsageError(f"{TOL_ENV}={env!r} is not a number") from None
    return default


def parse_theta(spec: str, k: int) -> float:
    if spec == "B":
        return math.pi / k
    if spec == "S":
        return math.pi / (2 * k)
    if spec.startswith("custom:"):
        try:
            return float(spec[len("custom:"):])
        except ValueError:
            pass
    raise UsageError(f"--theta must be B, S or custom:<radians>, got {spec!r}")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_gen(args) -> int:
    g = FAMILIES[args.family](args.k)
    _write(dumps(graph_to_doc(g, faces=args.faces)), args.output)
    return OK


def _load_drawing(path: str):
    base = None if path == "-" else Path(path).parent
    return drawing_from_doc(_read_json(path), base)


def cmd_validate(args) -> int:
    d = _load_drawing(args.drawing)
    report = validate(d, resolve_tol(args.tol))
    _write(dumps(report.to_dict()), args.output)
    return OK if report.ok else INVALID


def cmd_render(args) -> int:
    d = _load_drawing(args.drawing)
    style = StyleOptions(width=args.width, height=args.height, palette=args.palette)
    _write(render_svg(d, style), args.out)
    return OK


def cmd_certify(args) -> int:
    theta = parse_theta(args.theta, args.k)
    report = closure_search(args.k, theta, budget=args.budget, seed=args.seed, workers=args.workers)
    doc = report.to_dict(full=args.full)
    _write(dumps(doc), args.output)
    if args.figure:
        from .figures import certify_figure

        certify_figure(report.to_dict(full=True), args.figure)
    if report.gate and (report.nonpositive_steps or report.closed_configurations):
        return INVALID
    return OK


def _quad_arg(args):
    return quad_from_doc(_read_json(args.quad), resolve_tol(args.tol, aq.QUAD_TOL))


def cmd_arcquad(args) -> int:
    op = args.op
    if op == "build":
        cx, cy, r = args.circle
        if r <= 0:
            raise UsageError("circle radius must be positive")
        circle = GeneralizedCircle.from_center_radius(complex(cx, cy), r)
        q = aq.build_from_circle(circle, args.positions, args.theta, args.phi1, inside=not args.outside)
        _write(dumps(quad_to_doc(q)), args.output)
        return OK
    if op == "check-cyclic":
        tol = resolve_tol(args.tol, aq.QUAD_TOL)
        doc = _read_json(args.quad)
        try:
            q = quad_from_doc(doc, tol)
            aq.check_simple(q.sides, tol)
        except (NotCyclic, NotEquiangular) as exc:
            _write(dumps({"schema": "cyclic/1", "cyclic": False, "error": type(exc).__name__, "message": str(exc)}),
                   args.output)
            return INVALID
        c = q.circle
        res = max(abs(c.evaluate(v)) for v in q.vertices)
        out = {
            "schema": "cyclic/1",
            "cyclic": True,
            "circle": {"A": c.A, "B": [c.B.real, c.B.imag], "C": c.C},
            "inside": q.inside,
            "residual": res,
        }
        _write(dumps(out), args.output)
        return OK
    q = _quad_arg(args)
    if op == "tilt":
        out = {"schema": "tilt/1", "theta": q.theta, "bigons": list(q.bigons), "tilt": q.tilt}
    elif op == "sigma-span":
        span = aq.sigma_span(q)
        expected = 2 * q.theta + 2 * q.phi1 - math.pi
        out = {"schema": "sigma-span/1", "sigma_span": span, "expected": expected, "defect": abs(span - expected)}
    else:
        T, cfg = aq.canonical_rhombus_form(q)
        out = {
            "schema": "rhombus/1",
            "transform": {k: [complex(getattr(T, k)).real, complex(getattr(T, k)).imag] for k in "abcd"},
            "centers": [[z.real, z.imag] for z in cfg.centers],
            "radii": list(cfg.radii),
            "vertices": [[z.real, z.imag] for z in cfg.vertices],
            "radius_defects": list(cfg.radius_defects()),
            "rhombus_defect": cfg.rhombus_defect(),
            "rectangle_defect": cfg.rectangle_defect(),
        }
    _write(dumps(out), args.output)
    return OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lombardikit", description="Lombardi drawing toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a graph family member")
    g.add_argument("family", choices=sorted(FAMILIES))
    g.add_argument("k", type=int)
    g.add_argument("-o", "--output")
    g.add_argument("--faces", action="store_true", help="include the derived faces")
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("validate", help="check a drawing")
    v.add_argument("drawing", help="drawing JSON, or - for stdin")
    v.add_argument("--tol", type=float, help=f"angle tolerance (default ${TOL_ENV} or {ANGLE_TOL})")
    v.add_argument("-o", "--output")
    v.set_defaults(func=cmd_validate)

    r = sub.add_parser("render", help="draw as SVG")
    r.add_argument("drawing")
    r.add_argument("out", help="SVG path, or - for stdout")
    r.add_argument("--palette", choices=sorted(PALETTES), default="paper")
    r.add_argument("--width", type=int, default=600)
    r.add_argument("--height", type=int, default=600)
    r.set_defaults(func=cmd_render)

    c = sub.add_parser("certify", help="search for closing quadrilateral fans")
    c.add_argument("k", type=int)
    c.add_argument("--theta", default="B", help="B (pi/k), S (pi/2k) or custom:<radians>")
    c.add_argument("--budget", type=int, default=10_000, help="fan steps to sample")
    c.add_argument("--seed", type=int, required=True)
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--full", action="store_true", help="include per-candidate sequences")
    c.add_argument("--figure", help="also write a PNG summary")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_certify)

    a = sub.add_parser("arcquad", help="equiangular arc-quadrilaterals")
    asub = a.add_subparsers(dest="op", required=True)
    b = asub.add_parser("build")
    b.add_argument("--circle", type=float, nargs=3, metavar=("CX", "CY", "R"), default=(0.0, 0.0, 1.0))
    b.add_argument("--positions", type=float, nargs=4, required=True, metavar="ANGLE")
    b.add_argument("--theta", type=float, required=True)
    b.add_argument("--phi1", type=float, required=True)
    b.add_argument("--outside", action="store_true")
    b.add_argument("-o", "--output")
    for name in ("check-cyclic", "tilt", "rhombus", "sigma-span"):
        s = asub.add_parser(name)
        s.add_argument("quad", help="quadrilateral JSON, or - for stdin")
        s.add_argument("--tol", type=float)
        s.add_argument("-o", "--output")
    a.set_defaults(func=cmd_arcquad)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, BadParameter, ConstructionInfeasible, DocumentError, OSError) as exc:
        print(f"lombardikit: error: {exc}", file=sys.stderr)
        return ERROR
    except (QuadError, GeometryError, LombardiError) as exc:
        print(f"lombardikit: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
