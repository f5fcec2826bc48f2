"""``qharm`` command line.

Exit codes: 0 pass/member, 1 fail/non-member, 2 not certified, 64 usage or
malformed input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import bounds, verify
from .classes import (ConvexWeights, NotRestrictedError, convex_combination, coefficient_functional,
                      extremal_function, extreme_point_g, extreme_point_h, is_member_restricted,
                      Verdict)
from .formats import (InputError, dumps, fmt_float, series_from_dict, series_to_dict,
                      weights_from_dict)
from .qcore import ClassParams
from .render import render_svg
from .sampling import random_margin_positive, random_params
from .series import AnalyticSeries, GridSpec, HarmonicSeries, default_order

EXIT_OK, EXIT_FAIL, EXIT_UNCERTIFIED, EXIT_USAGE = 0, 1, 2, 64

COMMANDS = ("check", "extremal", "extreme-points", "distort", "cover", "verify", "reduce", "render")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None


def _grid_arg(text: str) -> tuple[int, int]:
    for sep in ("x", "X", "×"):
        if sep in text:
            r, a = text.split(sep, 1)
            try:
                return int(r), int(a)
            except ValueError:
                break
    raise argparse.ArgumentTypeError(f"grid must look like 32x128, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--q", default="0.5", help="q in (0, 1); comma list for 'reduce q1'")
    common.add_argument("--m", type=int, default=0, help="operator order m >= 0")
    common.add_argument("--alpha", type=float, default=0.0, help="class order 0 <= alpha < 1")
    common.add_argument("--format", choices=("json", "csv", "svg"), default=None)
    common.add_argument("--output", type=Path, default=None, help="write here instead of stdout")

    series_in = _Parser(add_help=False)
    series_in.add_argument("--input", type=Path, help="series JSON file")
    series_in.add_argument("--restricted", action="store_true",
                           help="treat input as restricted-sign family (exact test)")

    grid = _Parser(add_help=False)
    grid.add_argument("--grid", type=_grid_arg, default=None, help="rings x angles, e.g. 32x128")
    grid.add_argument("--max-radius", type=float, default=0.999)
    grid.add_argument("--tol", type=float, default=verify.TOL)

    parser = _Parser(prog="qharm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("check", parents=[common, series_in], help="coefficient membership test")

    p = sub.add_parser("extremal", parents=[common], help="margin-zero function from weights")
    p.add_argument("--weights", required=True, help="path or inline JSON: {x, y} or {X, Y}")
    p.add_argument("--order", type=int, default=None)

    p = sub.add_parser("extreme-points", parents=[common], help="extreme points h_n, g_n")
    p.add_argument("--kind", choices=("h", "g", "all"), default="all")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--count", type=int, default=4)
    p.add_argument("--order", type=int, default=None)

    p = sub.add_parser("distort", parents=[common], help="distortion bound table")
    p.add_argument("--b1", default="0")
    p.add_argument("--r", default="0.25,0.5,0.9")
    p.add_argument("--variant", action="store_true",
                   help="compare printed, variant b1 factor and grid-search oracle")

    p = sub.add_parser("cover", parents=[common, series_in, grid], help="covering radius")
    p.add_argument("--b1", default="0")
    p.add_argument("--ring-radius", type=float, default=1 - 1e-3)

    p = sub.add_parser("verify", parents=[common, series_in, grid], help="run the verification suite")
    p.add_argument("--random", action="store_true", help="sweep random margin-positive members")
    p.add_argument("--random-params", action="store_true", help="also draw (q, m, alpha) at random")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--reduce", choices=("m0", "q1"), default=None)

    p = sub.add_parser("reduce", parents=[common, series_in, grid], help="m = 0 and q -> 1 reductions")
    p.add_argument("which", choices=("m0", "q1"))

    sub.add_parser("render", parents=[common, series_in], help="SVG picture of f(D)")
    return parser


def _params(args) -> ClassParams:
    qs = _floats(args.q)
    if len(qs) != 1:
        raise UsageError("--q takes a single value for this command")
    try:
        return ClassParams(qs[0], args.m, args.alpha)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load_series(args, p: ClassParams | None, required: bool = True) -> HarmonicSeries | None:
    if args.input is None:
        if required:
            raise UsageError("--input PATH is required")
        return None
    try:
        doc = json.loads(Path(args.input).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {args.input}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{args.input}: not valid JSON ({exc.msg})") from None
    if getattr(args, "restricted", False) and p is not None and isinstance(doc, dict):
        doc.setdefault("co_sign", p.co_sign)
    return series_from_dict(doc)


def _grid(args) -> GridSpec:
    if args.grid is None:
        return GridSpec.geometric(32, 128, 0.05, args.max_radius)
    rings, angles = args.grid
    return GridSpec.geometric(rings, angles, 0.05, args.max_radius)


def _emit(args, text: str):
    if args.output is None:
        sys.stdout.write(text)
    else:
        args.output.write_text(text)


def _check_format(args, allowed, default):
    fmt = args.format or default
    if fmt not in allowed:
        raise UsageError(f"--format {fmt} is not available for '{args.command}'")
    return fmt


def _params_dict(p: ClassParams) -> dict:
    return {"q": p.q, "m": p.m, "alpha": p.alpha}


def cmd_check(args) -> int:
    _check_format(args, ("json",), "json")
    p = _params(args)
    f = _load_series(args, p)
    out = {"command": "check", "params": _params_dict(p)}
    if args.restricted:
        try:
            report = is_member_restricted(f, p)
        except NotRestrictedError as exc:
            raise InputError(str(exc)) from None
    else:
        report = coefficient_functional(f, p)
    out["report"] = report.to_dict()
    if report.verdict is Verdict.NON_MEMBER:
        r0 = verify.necessity_witness(f, p)
        out["necessity_witness"] = None if r0 is None else {
            "r0": r0, "ratio_real_part": float(verify.ratio_real_part(f, p, r0))}
    _emit(args, dumps(out))
    if report.is_member:
        return EXIT_OK
    return EXIT_FAIL if report.verdict is Verdict.NON_MEMBER else EXIT_UNCERTIFIED


def _read_json_arg(text: str):
    path = Path(text)
    try:
        if path.exists():
            return json.loads(path.read_text())
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"weights: not valid JSON ({exc.msg})") from None


def cmd_extremal(args) -> int:
    _check_format(args, ("json",), "json")
    p = _params(args)
    w = weights_from_dict(_read_json_arg(args.weights))
    order = args.order
    try:
        if isinstance(w, ConvexWeights):
            f = convex_combination(p, w, order)
        else:
            f = extremal_function(p, w, order)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(args, dumps(series_to_dict(f)))
    return EXIT_OK


def cmd_extreme_points(args) -> int:
    _check_format(args, ("json",), "json")
    p = _params(args)
    order = default_order() if args.order is None else args.order
    makers = {"h": extreme_point_h, "g": extreme_point_g}
    if args.n is not None:
        if args.kind == "all":
            raise UsageError("--n needs --kind h or --kind g")
        try:
            f = makers[args.kind](p, args.n, order)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        _emit(args, dumps(series_to_dict(f)))
        return EXIT_OK
    kinds = ("h", "g") if args.kind == "all" else (args.kind,)
    points = []
    for kind in kinds:
        for n in range(1, min(args.count, order) + 1):
            f = makers[kind](p, n, order)
            points.append({"kind": kind, "n": n, "hull_boundary": f.hull_boundary,
                           "margin": is_member_restricted(f, p).margin, "series": series_to_dict(f)})
    _emit(args, dumps({"params": _params_dict(p), "extreme_points": points}))
    return EXIT_OK


def _rows_csv(rows: list[dict]) -> str:
    cols = []
    for row in rows:
        for k in row:
            if k not in cols:
                cols.append(k)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for row in rows:
        w.writerow(["" if row.get(c) is None else fmt_float(row[c]) if isinstance(row.get(c), float)
                    else row[c] for c in cols])
    return buf.getvalue()


def cmd_distort(args) -> int:
    fmt = _check_format(args, ("json", "csv"), "json")
    p = _params(args)
    b1s, rs = _floats(args.b1), _floats(args.r)
    try:
        if args.variant:
            rows = verify.b1_discrepancy_report([p], b1s, rs)
        else:
            rows = bounds.bounds_table([p], b1s, rs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if fmt == "csv":
        _emit(args, bounds.bounds_csv(rows) if not args.variant else _rows_csv(rows))
    else:
        key = "comparison" if args.variant else "bounds"
        _emit(args, dumps({"command": "distort", "params": _params_dict(p), key: rows}))
    return EXIT_OK


def cmd_cover(args) -> int:
    _check_format(args, ("json",), "json")
    p = _params(args)
    f = _load_series(args, p, required=False)
    if f is not None:
        try:
            report = verify.verify_covering(f, p, args.ring_radius, args.tol)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        _emit(args, dumps(report.to_dict()))
        return EXIT_OK if report.passed else EXIT_FAIL
    rows = []
    for b1 in _floats(args.b1):
        try:
            rows.append({"b1": b1, "covering_radius": bounds.covering_radius(p, b1),
                         "lower_limit": bounds.covering_limit_from_distortion(p, b1)})
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    _emit(args, dumps({"command": "cover", "params": _params_dict(p), "covering": rows}))
    return EXIT_OK


def _reduce(args, which: str, f: HarmonicSeries | None):
    if which == "q1":
        qs = _floats(args.q)
        if not qs:
            raise UsageError("--q needs at least one value")
        s = f.h if f is not None else AnalyticSeries.from_coeffs([1.0, 1.0])
        try:
            return verify.verify_reduction_q1(s, args.m, qs)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    p = _params(args)
    f = f if f is not None else HarmonicSeries.identity()
    return verify.verify_reduction_m0(f, p.q, _grid(args))


def cmd_reduce(args) -> int:
    _check_format(args, ("json",), "json")
    f = _load_series(args, None, required=False)
    report = _reduce(args, args.which, f)
    _emit(args, dumps(report.to_dict()))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_verify(args) -> int:
    _check_format(args, ("json",), "json")
    if args.reduce is not None:
        if args.random:
            raise UsageError("--reduce and --random are mutually exclusive")
        report = _reduce(args, args.reduce, _load_series(args, None, required=False))
        _emit(args, dumps({"command": "verify", "reduce": args.reduce, "pass": report.passed,
                           "reports": [report.to_dict()]}))
        return EXIT_OK if report.passed else EXIT_FAIL
    if args.random == (args.input is not None):
        raise UsageError("verify needs exactly one of --input PATH or --random")
    if args.random_params and not args.random:
        raise UsageError("--random-params requires --random")
    grid = _grid(args)
    members = []
    if args.random:
        base = None if args.random_params else _params(args)
        rng = np.random.default_rng(args.seed)
        for i in range(args.count):
            p = random_params(rng) if base is None else base
            members.append((p, random_margin_positive(rng, p)))
    else:
        p = _params(args)
        members.append((p, _load_series(args, p)))
    results, failing = [], []
    for i, (p, f) in enumerate(members):
        try:
            reports = verify.run_suite(f, p, grid, args.tol)
        except NotRestrictedError as exc:
            raise InputError(str(exc)) from None
        for r in reports:
            if not r.passed:
                failing.append({"member": i, "check": r.check, "witness": r.witness_dict()})
        entry = {"member": i, "params": _params_dict(p), "reports": [r.to_dict() for r in reports]}
        if args.random:
            entry["series"] = series_to_dict(f)
        results.append(entry)
    ok = not failing
    doc = {"command": "verify", "seed": args.seed if args.random else None, "pass": ok,
           "summary": {"members": len(members), "failed_checks": len(failing), "failing": failing},
           "members": results}
    _emit(args, dumps(doc))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_render(args) -> int:
    _check_format(args, ("svg",), "svg")
    p = _params(args)
    f = _load_series(args, p)
    _emit(args, render_svg(f, p))
    return EXIT_OK


HANDLERS = {
    "check": cmd_check,
    "extremal": cmd_extremal,
    "extreme-points": cmd_extreme_points,
    "distort": cmd_distort,
    "cover": cmd_cover,
    "verify": cmd_verify,
    "reduce": cmd_reduce,
    "render": cmd_render,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return HANDLERS[args.command](args)
    except (UsageError, InputError) as exc:
        print(f"qharm {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
