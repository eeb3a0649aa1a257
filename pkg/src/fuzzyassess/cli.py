"""Command-line interface.

Exit status: 0 on success, 1 when verification fails or on an internal
error, 2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence, TextIO

from . import __version__
from .errors import AssessmentError, UnsupportedShape
from .ingest import distributions_for, parse_dataset
from .model import (
    DEFAULT_EPS,
    GradeScale,
    ModelSpec,
    ShapeKind,
    centroid,
    compare,
    gpa,
    make_model,
)
from .oracle import DEFAULT_RESOLUTION, integral_centroid, layout, particle_centroid
from .report import render_report

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
PARTICLE_TOL = 1e-12
INTEGRAL_TOL_FACTOR = 5


def _model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", choices=[s.value for s in ShapeKind], default="grm")
    p.add_argument("--k", type=float, default=None,
                   help="overlap percent between adjacent figures (default 30, 0 for classic)")
    p.add_argument("--scale", type=GradeScale.parse, default=None,
                   help="comma-separated grade labels, worst first (e.g. F,D,C,B,A)")


def _input_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", help="dataset path, or - for stdin")
    p.add_argument("--input-format", choices=["csv", "json"], default=None,
                   help="dataset format (default: from file extension, else csv)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuzzyassess", description="Fuzzy centroid assessment of grade distributions."
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    report = sub.add_parser("report", help="per-group centroid and GPA")
    compare_p = sub.add_parser("compare", help="rank groups by the centroid criterion")
    for p in (report, compare_p):
        _model_flags(p)
        _input_flags(p)
        p.add_argument("--format", choices=["text", "json"], default="text")
    compare_p.add_argument("--eps", type=float, default=DEFAULT_EPS,
                           help="tolerance for equal x_c and y_c (default 1e-9)")

    coeffs = sub.add_parser("coeffs", help="print model coefficients")
    _model_flags(coeffs)
    coeffs.add_argument("--n", type=int, default=None, help="number of grades (default 5)")
    coeffs.add_argument("--format", choices=["text", "json"], default="text")

    verify = sub.add_parser("verify", help="check closed forms against the geometric oracle")
    _model_flags(verify)
    _input_flags(verify)
    verify.add_argument("--resolution", type=float, default=DEFAULT_RESOLUTION)
    return parser


def _model(args, n: int) -> ModelSpec:
    f = None if args.k is None else args.k / 100
    return make_model(args.model, n, f)


def _read_datasets(args, stdin: TextIO):
    if args.input == "-":
        text = stdin.read()
    else:
        text = Path(args.input).read_text(encoding="utf-8")
    fmt = args.input_format
    if fmt is None:
        fmt = "json" if args.input.lower().endswith(".json") else "csv"
    return parse_dataset(text, fmt, args.scale)


def _analyse(args, stdin: TextIO):
    datasets = _read_datasets(args, stdin)
    model = _model(args, datasets[0].scale.n)
    groups = distributions_for(datasets, model)
    centroids = {gid: centroid(d, model) for gid, d in groups}
    gpas = {gid: gpa(d) for gid, d in groups}
    return model, groups, centroids, gpas


def run_report(args, stdin: TextIO, out: TextIO) -> int:
    model, _, centroids, gpas = _analyse(args, stdin)
    out.write(render_report(None, centroids, gpas, model, args.format))
    return EXIT_OK


def run_compare(args, stdin: TextIO, out: TextIO) -> int:
    model, groups, centroids, gpas = _analyse(args, stdin)
    verdict = compare(groups, model, args.eps)
    out.write(render_report(verdict, centroids, gpas, model, args.format))
    return EXIT_OK


def run_coeffs(args, stdin: TextIO, out: TextIO) -> int:
    if args.n is not None:
        n = args.n
    elif args.scale is not None:
        n = args.scale.n
    else:
        n = 5
    model = _model(args, n)
    coeffs = model.coefficients()
    if args.format == "json":
        out.write(json.dumps({"shape": model.shape.value, "n": model.n, "f": model.f, **coeffs},
                             indent=2) + "\n")
    else:
        out.write(f"model: {model.shape.value} (n={model.n}, overlap={model.percent:.6f}%)\n")
        for name, value in coeffs.items():
            out.write(f"{name:<9} {value:.6f}\n")
    return EXIT_OK


def run_verify(args, stdin: TextIO, out: TextIO) -> int:
    if args.model not in (ShapeKind.RECTANGULAR_CLASSIC.value,
                          ShapeKind.GENERALIZED_RECTANGULAR.value):
        raise UnsupportedShape(f"no geometric oracle for the {args.model} model")
    model, groups, centroids, _ = _analyse(args, stdin)
    if model.shape is ShapeKind.RECTANGULAR_CLASSIC:
        method, tol = "area integral", INTEGRAL_TOL_FACTOR * args.resolution
    else:
        method, tol = "particle system", PARTICLE_TOL
    worst = 0.0
    for gid, dist in groups:
        regions = layout(model, dist)
        if model.shape is ShapeKind.RECTANGULAR_CLASSIC:
            geo = integral_centroid(regions, args.resolution)
        else:
            geo = particle_centroid(regions)
        closed = centroids[gid]
        dev = max(abs(geo.x_c - closed.x_c), abs(geo.y_c - closed.y_c))
        worst = max(worst, dev)
        out.write(f"{gid}: closed=({closed.x_c:.6f}, {closed.y_c:.6f}) "
                  f"{method}=({geo.x_c:.6f}, {geo.y_c:.6f}) deviation={dev:.3e}\n")
    ok = worst <= tol
    out.write(f"max deviation: {worst:.3e} (tolerance {tol:.1e}) {'OK' if ok else 'FAILED'}\n")
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "report": run_report,
    "compare": run_compare,
    "coeffs": run_coeffs,
    "verify": run_verify,
}


def main(
    argv: Sequence[str] | None = None,
    stdin: TextIO | None = None,
    stdout: TextIO | None = None,
    stderr: TextIO | None = None,
) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, stdin, stdout)
    except (AssessmentError, OSError, UnicodeDecodeError) as exc:
        stderr.write(f"fuzzyassess {args.command}: error: {exc}\n")
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        stderr.write(f"fuzzyassess {args.command}: internal error: {exc!r}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
