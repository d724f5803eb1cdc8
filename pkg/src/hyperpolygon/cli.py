"""Command line interface.

Subcommands::

    hyperpolygon incircle 90 90 90 90 90 [--json]
    hyperpolygon minimize 90 90 90 90 90 --seed 7 --samples 20 [--json]
    hyperpolygon render 90 90 90 90 90 --out pentagon.svg
    hyperpolygon render --input polygon.json --out polygon.svg
    hyperpolygon check polygon.json

Angles are read in degrees unless ``--rad`` is given. Exit codes: 0 on
success, 2 for bad input, 3 when a verification fails and 4 for any other
numerical failure.
"""

import argparse
import sys

import numpy as np

from hyperpolygon import __version__, serialize
from hyperpolygon.angles import AngleSpec
from hyperpolygon.exceptions import GeometryError, InputError, InvalidInput, VerificationError
from hyperpolygon._tolerances import CRITICALITY_TOL
from hyperpolygon.incircle import criticality_residual, incircle_center, solve
from hyperpolygon.optimizer import verify_theorem
from hyperpolygon.polygon import build, from_dict, to_dict, validate
from hyperpolygon.render import RenderOptions, render_svg

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_VERIFY = 3
EXIT_NUMERIC = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidInput(message)


def _angle_spec(args):
    if not args.angles:
        raise InvalidInput("no angles given")
    if args.rad:
        return AngleSpec(args.angles)
    return AngleSpec.from_degrees(args.angles)


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def incircle_document(sol):
    """Polygon JSON of an incircle solution, with its extra fields."""
    d = to_dict(sol.polygon)
    d.update(sol.to_dict())
    return d


def _incircle_table(sol):
    p = sol.polygon
    lines = [
        f"radius     {sol.radius:.12g}",
        f"perimeter  {p.perimeter:.12g}",
        "center     (" + ", ".join(f"{x:.12g}" for x in sol.center) + ")",
        "",
        f"{'i':>3}  {'angle (deg)':>14}  {'tangent':>16}  {'edge length':>16}",
    ]
    for i in range(p.n):
        lines.append(
            f"{i:>3}  {np.degrees(p.angles.beta[i]):>14.8g}  "
            f"{sol.tangent_lengths[i]:>16.12g}  {p.lengths[i]:>16.12g}"
        )
    return "\n".join(lines) + "\n"


def cmd_incircle(args):
    sol = solve(_angle_spec(args))
    text = serialize.dumps(incircle_document(sol)) if args.json else _incircle_table(sol)
    _emit(text, args.out)
    return EXIT_OK


def _report_text(d):
    lines = [
        f"n                   {d['n']}",
        f"seed                {d['seed']}",
        f"samples             {d['samples']}",
        f"incircle radius     {d['radius']:.12g}",
        f"incircle perimeter  {d['incircle_perimeter']:.12g}",
    ]
    if d["zero_dimensional"]:
        lines.append("manifold            zero-dimensional (triangle): the polygon is unique")
    lines += [
        f"min gap             {d['min_gap']:.6e}",
        f"max gap             {d['max_gap']:.6e}",
        f"max length error    {d['max_length_error']:.6e}",
        f"iterations          min {d['iterations']['min']}  max {d['iterations']['max']}"
        f"  total {d['iterations']['total']}",
    ]
    for step, gap in d["min_gap_by_step"].items():
        lines.append(f"min gap at step {step:<6} {gap:.6e}")
    for v in d["violations"]:
        lines.append(f"VIOLATION: {v}")
    lines.append("result              " + ("PASS" if d["passed"] else "FAIL"))
    return "\n".join(lines) + "\n"


def cmd_minimize(args):
    if args.samples < 0:
        raise InvalidInput("--samples must be non-negative")
    report = verify_theorem(_angle_spec(args), args.samples, args.seed)
    d = report.to_dict()
    _emit(serialize.dumps(d) if args.json else _report_text(d), args.out)
    return EXIT_OK if report.passed else EXIT_VERIFY


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            d = serialize.loads(fh.read())
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from exc
    except ValueError as exc:
        raise InvalidInput(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(d, dict):
        raise InvalidInput(f"{path} does not hold a JSON object")
    return d


def _circle_from(d, p):
    """Circle stored in a polygon document, else the inscribed one if any."""
    if "center" in d and "radius" in d:
        center = np.asarray(d["center"], dtype=float)
        if center.shape != (3,):
            raise InvalidInput("'center' must have three coordinates")
        return center, float(d["radius"])
    if criticality_residual(p) < CRITICALITY_TOL:
        return incircle_center(p)
    return None


def cmd_render(args):
    options = RenderOptions(
        width_px=args.width,
        samples_per_edge=args.samples_per_edge,
        draw_incircle=not args.no_incircle,
        draw_duals_table=args.duals_table,
        recenter=not args.no_recenter,
    )
    if args.input is not None:
        if args.angles or args.lengths:
            raise InvalidInput("--input cannot be combined with angles or --lengths")
        d = _read_json(args.input)
        p = from_dict(d)
        circle = _circle_from(d, p)
    elif args.lengths is not None:
        p = build(_angle_spec(args), args.lengths)
        circle = _circle_from({}, p)
    else:
        sol = solve(_angle_spec(args))
        p, circle = sol.polygon, (sol.center, sol.radius)
    _emit(render_svg(p, options, circle), args.out)
    return EXIT_OK


def cmd_check(args):
    path = args.input if args.input is not None else args.file
    if path is None:
        raise InvalidInput("check needs a polygon JSON file")
    p = from_dict(_read_json(path))
    checks = validate(p)
    checks["critical"] = (True, criticality_residual(p))
    ok = all(v[0] for v in checks.values())
    if args.json:
        d = {k: {"ok": bool(v[0]), "value": v[1]} for k, v in checks.items()}
        d["valid"] = ok
        text = serialize.dumps(d)
    else:
        rows = []
        for k, (good, value) in checks.items():
            shown = "" if value is None else f"{value:.3e}"
            rows.append(f"{k:<26} {'ok' if good else 'FAILED':<7} {shown}")
        rows.append("polygon is " + ("valid" if ok else "INVALID"))
        text = "\n".join(rows) + "\n"
    _emit(text, args.out)
    return EXIT_OK if ok else EXIT_VERIFY


def _add_angle_args(sp, required=True):
    sp.add_argument(
        "angles", nargs="+" if required else "*", type=float, metavar="ANGLE",
        help="interior angles in order (degrees by default)",
    )
    unit = sp.add_mutually_exclusive_group()
    unit.add_argument("--deg", action="store_true", help="angles in degrees (default)")
    unit.add_argument("--rad", action="store_true", help="angles in radians")


def build_parser():
    parser = _Parser(
        prog="hyperpolygon",
        description="Minimal perimeter hyperbolic polygons with prescribed angles.",
    )
    parser.add_argument("--version", action="version", version=f"hyperpolygon {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("incircle", help="polygon with an inscribed circle")
    _add_angle_args(sp)
    sp.add_argument("--json", action="store_true", help="print polygon JSON")
    sp.add_argument("--out", metavar="FILE")
    sp.set_defaults(func=cmd_incircle)

    sp = sub.add_parser("minimize", help="check numerically that the incircle polygon is minimal")
    _add_angle_args(sp)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=int, default=50)
    sp.add_argument("--json", action="store_true", help="print the report as JSON")
    sp.add_argument("--out", metavar="FILE")
    sp.set_defaults(func=cmd_minimize)

    sp = sub.add_parser("render", help="draw a polygon in the Poincare disk as SVG")
    _add_angle_args(sp, required=False)
    sp.add_argument("--input", metavar="FILE", help="polygon JSON file")
    sp.add_argument("--lengths", nargs="+", type=float, metavar="L", help="explicit edge lengths")
    sp.add_argument("--width", type=int, default=512)
    sp.add_argument("--samples-per-edge", type=int, default=32)
    sp.add_argument("--no-incircle", action="store_true")
    sp.add_argument("--duals-table", action="store_true")
    sp.add_argument("--no-recenter", action="store_true")
    sp.add_argument("--out", metavar="FILE")
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("check", help="validate a polygon JSON file")
    sp.add_argument("file", nargs="?")
    sp.add_argument("--input", metavar="FILE")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--out", metavar="FILE")
    sp.set_defaults(func=cmd_check)
    return parser


def main(argv=None):
    """Run the CLI and return its exit code."""
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except GeometryError as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
