"""Command-line front end.

Exit codes: 0 pass, 1 failed verdict, 2 usage or parse error, 3 invariant
violation, 4 infeasible decomposition, 5 inconclusive verification.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field, replace

import numpy as np

from . import membership as mem
from . import verification as ver
from .errors import DecompositionInfeasible, InvariantError, ParameterRangeError
from .operators import FamilyParams, bernardi
from .plot import DEFAULT_CIRCLES, render_svg
from .series import DEFAULT_TRUNCATION, HarmonicFunction, dumps, harmonic_from_dict, harmonic_to_dict

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INVARIANT, EXIT_INFEASIBLE, EXIT_INCONCLUSIVE = range(6)
CONFIG_ENV = "HGFT_CONFIG"


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    truncation: int | None = None
    tolerance: float = mem.DEFAULT_TOLERANCE
    grid: ver.GridSpec = field(default_factory=ver.GridSpec)
    seed: int = 0
    format: str = "json"
    out: str | None = None

    def __post_init__(self):
        if self.truncation is not None and self.truncation < 2:
            raise UsageError("truncation must be >= 2")
        if not self.tolerance > 0:
            raise UsageError("tolerance must be > 0")
        if self.format not in ("json", "csv"):
            raise UsageError("format must be json or csv")


def _load_config(args) -> RunConfig:
    raw = {}
    path = os.environ.get(CONFIG_ENV)
    if path:
        try:
            with open(path) as fh:
                raw = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read {CONFIG_ENV}={path}: {exc}") from exc
        if not isinstance(raw, dict):
            raise UsageError(f"{CONFIG_ENV} must hold a JSON object")
    try:
        grid = ver.GridSpec(**raw.get("grid", {}))
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad grid in {CONFIG_ENV}: {exc}") from exc
    cfg = RunConfig(
        truncation=raw.get("truncation"),
        tolerance=float(raw.get("tolerance", mem.DEFAULT_TOLERANCE)),
        grid=grid,
        seed=int(raw.get("seed", 0)),
        format=raw.get("format", "json"),
        out=raw.get("out"),
    )
    overrides = {k: getattr(args, k) for k in ("truncation", "tolerance", "seed", "format", "out")}
    overrides = {k: v for k, v in overrides.items() if v is not None}
    grid_over = {
        k: getattr(args, k, None) for k in ("r_min", "r_max", "radial_count", "angular_count")
    }
    grid_over = {k: v for k, v in grid_over.items() if v is not None}
    if grid_over:
        try:
            overrides["grid"] = replace(cfg.grid, **grid_over)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    return replace(cfg, **overrides)


def _params(args) -> FamilyParams:
    return FamilyParams(args.k, args.lam, args.gamma)


def _read_function(path: str, cfg: RunConfig) -> HarmonicFunction:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: {exc}") from exc
    try:
        f = harmonic_from_dict(data)
    except InvariantError:
        raise
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from exc
    if cfg.truncation is not None:
        f = f.with_length(cfg.truncation)
    return f


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.out:
        try:
            with open(cfg.out, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {cfg.out}: {exc}") from exc
    else:
        sys.stdout.write(text)


def _csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


# -- subcommands --------------------------------------------------------------


def cmd_check(args, cfg: RunConfig) -> int:
    params = _params(args)
    f = _read_function(args.input, cfg)
    report = mem.coefficient_sum(f, params, cfg.tolerance)
    if cfg.format == "csv":
        rows = [["n", "term_a", "term_b"]]
        rows += [[i + 1, repr(a), repr(b)] for i, (a, b) in enumerate(zip(report.terms_a, report.terms_b))]
        rows.append(["sum", repr(report.sum), ""])
        _emit(_csv(rows), cfg)
    else:
        out = report.to_dict()
        out["params"] = params.as_dict()
        out["sign_pattern"] = mem.has_sign_pattern(f, convention=args.convention)
        out["subclass_member"] = out["sign_pattern"] and report.verdict
        _emit(dumps(out), cfg)
    return EXIT_PASS if report.verdict else EXIT_FAIL


def _r_grid(spec: str) -> list[float]:
    try:
        values = [float(x) for x in spec.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad r grid {spec!r}") from exc
    if not values:
        raise UsageError("empty r grid")
    return values


def cmd_bounds(args, cfg: RunConfig) -> int:
    params = _params(args)
    rs = _r_grid(args.r_grid)
    try:
        radius = mem.covering_radius(params, args.b1)
        rows = [(r, mem.distortion_lower(params, args.b1, r), mem.distortion_upper(params, args.b1, r)) for r in rs]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    # Tabular by default; JSON only on an explicit --format json.
    if args.format == "json":
        _emit(dumps({
            "params": params.as_dict(),
            "b1_abs": args.b1,
            "covering_radius": radius,
            "rows": [{"r": r, "lower": lo, "upper": up} for r, lo, up in rows],
        }), cfg)
    else:
        text = f"# covering_radius={radius!r}\n" + _csv(
            [["r", "lower", "upper"]] + [[repr(r), repr(lo), repr(up)] for r, lo, up in rows]
        )
        _emit(text, cfg)
    return EXIT_PASS


def cmd_decompose(args, cfg: RunConfig) -> int:
    params = _params(args)
    f = _read_function(args.input, cfg)
    w = mem.decompose(f, params, cfg.tolerance)
    out = w.to_dict()
    out["params"] = params.as_dict()
    _emit(dumps(out), cfg)
    return EXIT_PASS


def cmd_bernardi(args, cfg: RunConfig) -> int:
    if args.c < 0:
        raise UsageError(f"c must be >= 0, got {args.c}")
    f = _read_function(args.input, cfg)
    _emit(dumps(harmonic_to_dict(bernardi(f, args.c))), cfg)
    return EXIT_PASS


def cmd_verify(args, cfg: RunConfig) -> int:
    params = _params(args)
    f = _read_function(args.input, cfg)
    grid = cfg.grid
    inj_grid = ver.GridSpec(grid.r_min, grid.r_max, args.injectivity_size, args.injectivity_size)
    _, _, pts = grid.mesh()
    reports = [
        ver.verify_analytic_condition(f, params, grid),
        ver.verify_sense_preserving(f, grid),
        ver.verify_injectivity(f, inj_grid),
        ver.verify_laplace(f, pts[np.abs(pts) < 1.0 - 2.0 * args.h_step], args.h_step),
    ]
    if args.samples:
        with open(args.samples, "w", newline="") as fh:
            fh.write(ver.samples_csv(f, params, grid))
    ok = all(r.passed for r in reports)
    if cfg.format == "csv":
        rows = [["name", "pass", "functional_min", "functional_max", "threshold", "samples", "excluded"]]
        rows += [[r.name, r.passed, repr(r.functional_min), repr(r.functional_max), repr(r.threshold), r.samples, r.excluded] for r in reports]
        _emit(_csv(rows), cfg)
    else:
        _emit(dumps({
            "params": params.as_dict(),
            "truncation": f.truncation,
            "pass": ok,
            "reports": [r.to_dict() for r in reports],
        }), cfg)
    if any(r.inconclusive for r in reports):
        return EXIT_INCONCLUSIVE
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_gen(args, cfg: RunConfig) -> int:
    params = _params(args)
    size = cfg.truncation or DEFAULT_TRUNCATION
    try:
        if args.subclass:
            f = ver.random_subclass_member(params, size, args.slack, cfg.seed, args.convention)
        else:
            f = ver.random_member(params, size, args.slack, cfg.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(dumps(harmonic_to_dict(f)), cfg)
    return EXIT_PASS


def cmd_plot(args, cfg: RunConfig) -> int:
    f = _read_function(args.input, cfg)
    circles = _r_grid(args.circles) if args.circles else DEFAULT_CIRCLES
    if any(not (0 < r <= 1) for r in circles):
        raise UsageError("circle radii must lie in (0, 1]")
    if args.rays < 1:
        raise UsageError("rays must be >= 1")
    covering = None
    if any(v is not None for v in (args.k, args.lam, args.gamma)):
        params = FamilyParams(args.k or 1, args.lam or 1, args.gamma or 0.0)
        covering = mem.covering_radius(params, abs(f.g[1]))
    svg = render_svg(f, circles, args.rays, covering)
    if args.output:
        cfg = replace(cfg, out=args.output)
    _emit(svg, cfg)
    return EXIT_PASS


# -- parser -------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hgft", description="Harmonic error-function family toolkit.")
    p.add_argument("--truncation", type=int, help="working series order N (pads or truncates inputs)")
    p.add_argument("--tolerance", type=float, help="absolute tolerance on the bound 2")
    p.add_argument("--seed", type=int, help="seed for random generation")
    p.add_argument("--format", choices=("json", "csv"))
    p.add_argument("--out", help="output path (default: stdout)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    fam = _Parser(add_help=False)
    fam.add_argument("-k", type=int, default=1)
    fam.add_argument("--lam", "--lambda", type=int, default=1, dest="lam")
    fam.add_argument("--gamma", type=float, default=0.0)

    s = sub.add_parser("check", parents=[fam], help="coefficient criterion and sign pattern")
    s.add_argument("input")
    s.add_argument("--convention", choices=mem.SIGN_CONVENTIONS, default="literal")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("bounds", parents=[fam], help="distortion envelopes and covering radius")
    s.add_argument("--b1", type=float, default=0.0, help="|b_1|")
    s.add_argument("--r-grid", default="0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,0.95")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("decompose", parents=[fam], help="extreme-point weights")
    s.add_argument("input")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("bernardi", help="Bernardi-Libera-Livingston operator")
    s.add_argument("input")
    s.add_argument("--c", type=float, required=True)
    s.set_defaults(func=cmd_bernardi)

    s = sub.add_parser("verify", parents=[fam], help="grid verification of a function")
    s.add_argument("input")
    s.add_argument("--r-min", type=float)
    s.add_argument("--r-max", type=float)
    s.add_argument("--radial-count", type=int)
    s.add_argument("--angular-count", type=int)
    s.add_argument("--injectivity-size", type=int, default=40)
    s.add_argument("--h-step", type=float, default=1e-3)
    s.add_argument("--samples", help="dump functional samples as CSV (r, theta, value)")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("gen", parents=[fam], help="seeded random member")
    s.add_argument("--slack", type=float, default=0.5)
    s.add_argument("--subclass", action="store_true", help="real coefficients with a sign pattern")
    s.add_argument("--convention", choices=("literal", "extreme"), default="literal")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("plot", help="SVG of images of circles and rays")
    s.add_argument("input")
    s.add_argument("output", nargs="?")
    s.add_argument("--circles", help="comma-separated radii")
    s.add_argument("--rays", type=int, default=8)
    s.add_argument("-k", type=int)
    s.add_argument("--lam", "--lambda", type=int, dest="lam")
    s.add_argument("--gamma", type=float)
    s.set_defaults(func=cmd_plot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _load_config(args)
        return args.func(args, cfg)
    except UsageError as exc:
        print(f"hgft: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantError as exc:
        print(f"hgft: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except DecompositionInfeasible as exc:
        print(f"hgft: decomposition infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ParameterRangeError as exc:
        print(f"hgft: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
