"""rotspin command line.

    rotspin verify [--tol T --seed S --trials N --out PATH --format json|csv]
    rotspin phase-map --u U --axis x,y,z --field F --plane qi,qj --fix qk=V,ql=W --range a:b:n --out PATH
    rotspin loop-phase --field F --radius R --windings W --segments N
    rotspin dirac-residual --u U --axis x,y,z --field F --h H

Field specs: zero | constant:A1,A2,A3,A4 | solenoid:FLUX (charge via --charge).
Exit codes: 0 pass, 1 verification failure, 2 usage/config error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .errors import DomainError
from .pair_construction import assumption1_reduce, make_pair
from .pauli_algebra import UnitAxis
from .phase_geometry import GaugeField, dirac_residual_coordinate, h2_constant
from .reports import (
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    RunConfig,
    loop_phase_report,
    phase_map,
    phase_map_csv,
    run_verification,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _floats(text: str, count: int | None = None) -> list[float]:
    try:
        vals = [float(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None
    if count is not None and len(vals) != count:
        raise UsageError(f"expected {count} numbers, got {text!r}")
    return vals


def parse_field(spec: str, charge: float) -> GaugeField:
    kind, _, rest = spec.partition(":")
    if kind == "zero" and not rest:
        return GaugeField.zero(charge)
    if kind == "constant":
        return GaugeField.constant(_floats(rest, 4), charge)
    if kind == "solenoid":
        return GaugeField.solenoid(_floats(rest, 1)[0], charge)
    raise UsageError(f"unknown field spec {spec!r}")


def parse_coord(name: str) -> int:
    """'q1'..'q4' (or '1'..'4') to a 0-based array position."""
    key = name.strip().lower().removeprefix("q")
    if key not in ("1", "2", "3", "4"):
        raise UsageError(f"coordinate must be one of q1..q4, got {name!r}")
    return int(key) - 1


def parse_range(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"range must be a:b:n, got {text!r}")
    try:
        return float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"range must be a:b:n, got {text!r}") from None


def _axis(text: str) -> UnitAxis:
    return UnitAxis.from_vector(_floats(text, 3))


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def cmd_verify(args) -> int:
    config = RunConfig(args.tol, args.seed, args.trials, args.format, args.out)
    report = run_verification(config)
    text = report.to_json() if config.output_format == "json" else report.to_csv()
    print(report.summary())
    if config.output_path:
        _write(config.output_path, text)
    return EXIT_OK if report.overall_pass else EXIT_FAIL


def cmd_phase_map(args) -> int:
    p = assumption1_reduce(args.u, _axis(args.axis))
    field = parse_field(args.field, args.charge)
    plane_names = args.plane.split(",")
    if len(plane_names) != 2:
        raise UsageError("--plane needs two coordinates, e.g. q1,q4")
    plane = (parse_coord(plane_names[0]), parse_coord(plane_names[1]))
    fixed = {}
    for item in filter(None, args.fix.split(",")):
        name, _, value = item.partition("=")
        try:
            fixed[parse_coord(name)] = float(value)
        except ValueError:
            raise UsageError(f"bad --fix entry {item!r}") from None
    anchor = _floats(args.anchor, 4) if args.anchor else None
    rows = phase_map(p, field, plane, fixed, parse_range(args.range), anchor, args.segments)
    flagged = sum(1 for r in rows if r[2] != r[2])
    if flagged:
        print(f"warning: {flagged} grid points have no defined phase (theta = nan)", file=sys.stderr)
    _write(args.out, phase_map_csv(rows))
    return EXIT_OK


def cmd_loop_phase(args) -> int:
    field = parse_field(args.field, args.charge)
    p = assumption1_reduce(args.u, _axis(args.axis))
    center = tuple(_floats(args.center, 2))
    report = loop_phase_report(p, field, args.radius, args.windings, args.segments, center)
    _write(args.out, json.dumps(report, indent=2) + "\n")
    return EXIT_OK


def cmd_dirac_residual(args) -> int:
    field = parse_field(args.field, args.charge)
    pair = make_pair(_axis(args.axis), args.theta, args.u)
    q = np.array(_floats(args.q, 4))
    out = {
        "field": field.kind,
        "u": args.u,
        "h": args.h,
        "residual": dirac_residual_coordinate(pair, field, q, args.h),
        "h2_constant": h2_constant(pair, field, q, args.h),
    }
    _write(args.out, json.dumps(out, indent=2) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rotspin", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run every verification check")
    v.add_argument("--tol", type=float, default=None, help="override every check's tolerance")
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    v.add_argument("--out", default=None)
    v.add_argument("--format", choices=["json", "csv"], default="json")
    v.set_defaults(func=cmd_verify)

    def momentum_args(sp):
        sp.add_argument("--u", type=float, default=0.0, help="rapidity")
        sp.add_argument("--axis", default="0,0,1", help="rotation axis x,y,z")
        sp.add_argument("--field", default="zero")
        sp.add_argument("--charge", type=float, default=1.0)
        sp.add_argument("--out", default=None)

    m = sub.add_parser("phase-map", help="emit theta over a 2D slice as CSV")
    momentum_args(m)
    m.add_argument("--plane", default="q1,q4")
    m.add_argument("--fix", default="q2=0,q3=0")
    m.add_argument("--range", default="-1:1:21", help="a:b:n; write --range=-1:1:21 when a is negative")
    m.add_argument("--anchor", default=None, help="q1,q2,q3,q4 where theta = 0")
    m.add_argument("--segments", type=int, default=64, help="quadrature segments per path")
    m.set_defaults(func=cmd_phase_map)

    lp = sub.add_parser("loop-phase", help="phase around a circular loop in the q1-q2 plane")
    momentum_args(lp)
    lp.add_argument("--radius", type=float, default=1.0)
    lp.add_argument("--windings", type=int, default=1)
    lp.add_argument("--segments", type=int, default=10_000)
    lp.add_argument("--center", default="0,0")
    lp.set_defaults(func=cmd_loop_phase)

    d = sub.add_parser("dirac-residual", help="coordinate-space Dirac residual at one event")
    momentum_args(d)
    d.add_argument("--theta", type=float, default=0.0)
    d.add_argument("--q", default="0.3,-0.2,0.5,1.1")
    d.add_argument("--h", type=float, default=1e-4)
    d.set_defaults(func=cmd_dirac_residual)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"rotspin: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"rotspin: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
