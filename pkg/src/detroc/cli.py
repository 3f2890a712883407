"""Command line front end.

Exit codes: 0 success, 1 validation error, 2 I/O error, 3 reproduction ran
but at least one comparison cell fell outside its tolerance.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import yaml

from .distribution import (
    monte_carlo_tail,
    tail_probability,
    weighted_sum_distribution,
)
from .game import assess_attack, breakeven_benefit_ratio
from .harness import (
    ExperimentConfig,
    paper_environments,
    reproduce_paper,
    run_config,
    write_roc_points_csv,
)
from .model import (
    GameParams,
    InfoEnvironment,
    WeightScheme,
    normalize_scheme,
    scheme_by_name,
)
from .roc import ThresholdGrid, auc_statistics, auc_trapezoid, roc_curve, youden
from .svg import emit_svg

OUTPUT_DIR_ENV = "DETROC_OUT"


def default_output_dir() -> str:
    return os.environ.get(OUTPUT_DIR_ENV, "detroc-out")


class _Parser(argparse.ArgumentParser):
    # Flag problems are validation errors: exit 1, not argparse's default 2.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _fmt(x: float) -> str:
    return format(float(x), ".9g")


def _parse_floats(text: str, flag: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",")]
    except ValueError:
        raise ValueError(f"{flag}: expected comma-separated numbers, got {text!r}")


def _resolve_scheme(args) -> WeightScheme:
    if getattr(args, "weights", None):
        return WeightScheme("custom", tuple(_parse_floats(args.weights, "--weights")))
    if getattr(args, "scheme", None):
        return scheme_by_name(args.scheme)
    raise ValueError("provide either --scheme or --weights")


def _resolve_environment(args) -> InfoEnvironment:
    if not getattr(args, "p", None) or not getattr(args, "q", None):
        raise ValueError("both --p and --q are required")
    return InfoEnvironment(
        "cli", tuple(_parse_floats(args.p, "--p")), tuple(_parse_floats(args.q, "--q"))
    )


def _grid(args) -> ThresholdGrid:
    return ThresholdGrid(mode=args.mode, samples=args.samples)


def _add_scheme_flags(parser, with_env=True):
    parser.add_argument("--scheme", help="built-in scheme name")
    parser.add_argument("--weights", help="custom weights, comma-separated")
    if with_env:
        parser.add_argument("--p", help="resolve probabilities, comma-separated")
        parser.add_argument("--q", help="false-alarm probabilities, comma-separated")


def _add_grid_flags(parser):
    parser.add_argument(
        "--mode", choices=("replication", "exact"), default="replication"
    )
    parser.add_argument("--samples", type=int, default=41)


def cmd_roc(args) -> int:
    scheme = _resolve_scheme(args)
    env = _resolve_environment(args)
    curve = roc_curve(scheme, env, _grid(args))
    out = args.out or os.path.join(default_output_dir(), "roc_points.csv")
    os.makedirs(os.path.dirname(out) or ".", exist_ok=True)
    write_roc_points_csv(out, [(scheme.name, env.env_id, curve)])
    if args.svg:
        os.makedirs(os.path.dirname(args.svg) or ".", exist_ok=True)
        emit_svg([(scheme.name, curve)], args.svg)
    print(f"AUC {auc_trapezoid(curve):.3f}")
    return 0


def cmd_auc(args) -> int:
    scheme = _resolve_scheme(args)
    grid = _grid(args)
    if args.paper_envs:
        stats = auc_statistics(scheme, paper_environments(), grid)
        print(
            f"AUC mean {_fmt(stats.mean)} min {_fmt(stats.min)} max {_fmt(stats.max)}"
        )
    else:
        env = _resolve_environment(args)
        print(f"AUC {auc_trapezoid(roc_curve(scheme, env, grid)):.3f}")
    return 0


def cmd_youden(args) -> int:
    scheme = _resolve_scheme(args)
    env = _resolve_environment(args)
    result = youden(scheme, env, _grid(args))
    print(f"j_star {_fmt(result.j_star)}")
    print(f"tau_star {_fmt(result.tau_star)}")
    return 0


def cmd_game(args) -> int:
    params = GameParams(benefit=args.benefit, cost=args.cost, prior=args.prior)
    if args.retaliation is not None:
        retaliation = args.retaliation
    else:
        scheme = _resolve_scheme(args)
        env = _resolve_environment(args)
        if args.tau is None:
            raise ValueError("--tau is required when computing retaliation from a scheme")
        dist1 = weighted_sum_distribution(scheme, env.p, type_label=1)
        retaliation = tail_probability(dist1, args.tau)
    assessment = assess_attack(retaliation, params)
    print(f"retaliation {_fmt(assessment.retaliation_prob)}")
    print(f"expected_payoff {_fmt(assessment.expected_payoff)}")
    print(f"deterrence_threshold {_fmt(assessment.deterrence_threshold)}")
    print(f"attacks {'true' if assessment.attacks else 'false'}")
    print(f"breakeven_benefit_ratio {_fmt(breakeven_benefit_ratio(retaliation))}")
    print(f"prior {_fmt(params.prior)}")
    return 0


def cmd_simulate(args) -> int:
    scheme = _resolve_scheme(args)
    if bool(args.p) == bool(args.q):
        raise ValueError("provide exactly one of --p or --q to simulate")
    probs = _parse_floats(args.p or args.q, "--p" if args.p else "--q")
    estimate = monte_carlo_tail(scheme, probs, args.tau, args.trials, args.seed)
    exact = tail_probability(
        weighted_sum_distribution(scheme, probs), args.tau
    )
    if estimate.std_error == 0.0:
        z = 0.0 if estimate.estimate == exact else math.inf
    else:
        z = (estimate.estimate - exact) / estimate.std_error
    print(f"estimate {_fmt(estimate.estimate)}")
    print(f"std_error {_fmt(estimate.std_error)}")
    print(f"exact {_fmt(exact)}")
    print(f"z {_fmt(z)}")
    return 0


def _config_from_file(path: str) -> ExperimentConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = yaml.safe_load(fh)
    except yaml.YAMLError as exc:
        raise ValueError(f"{path}: not valid YAML: {exc}")
    try:
        return _parse_config(raw)
    except (ValueError, TypeError, KeyError) as exc:
        raise ValueError(f"{path}: {exc}")


def _parse_config(raw) -> ExperimentConfig:
    if not isinstance(raw, dict):
        raise ValueError("config must be a mapping")
    known = {"schemes", "environments", "grid", "outputs", "seed", "trials"}
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    schemes = []
    for i, entry in enumerate(raw.get("schemes") or []):
        if isinstance(entry, str):
            schemes.append(scheme_by_name(entry))
        elif isinstance(entry, dict):
            name = entry.get("name", f"scheme{i + 1:02d}")
            weights = entry.get("weights")
            if weights is None:
                schemes.append(scheme_by_name(name))
            elif "normalize_to" in entry:
                schemes.append(
                    normalize_scheme(weights, entry["normalize_to"], name=name)
                )
            else:
                schemes.append(WeightScheme(name, tuple(float(w) for w in weights)))
        else:
            raise ValueError(f"schemes[{i}]: expected name or mapping, got {entry!r}")
    environments = []
    for i, entry in enumerate(raw.get("environments") or []):
        if entry == "paper":
            environments.extend(paper_environments())
            continue
        if not isinstance(entry, dict):
            raise ValueError(f"environments[{i}]: expected mapping, got {entry!r}")
        env_id = entry.get("id", f"env{i + 1:02d}")
        environments.append(
            InfoEnvironment(env_id, tuple(entry["p"]), tuple(entry["q"]))
        )
    grid_raw = raw.get("grid") or {}
    grid = ThresholdGrid(
        mode=grid_raw.get("mode", "replication"),
        samples=int(grid_raw.get("samples", 41)),
        lo=float(grid_raw.get("lo", 0.0)),
        hi=None if grid_raw.get("hi") is None else float(grid_raw["hi"]),
    )
    return ExperimentConfig(
        schemes=tuple(schemes),
        environments=tuple(environments),
        grid=grid,
        outputs=tuple(raw.get("outputs") or ("roc-points", "auc-table", "j-table")),
        seed=int(raw.get("seed", 0)),
        trials=int(raw.get("trials", 0)),
    )


def cmd_batch(args) -> int:
    cfg = _config_from_file(args.config)
    run_config(cfg, args.out, jobs=args.jobs)
    print(f"wrote artifacts to {args.out}")
    return 0


def cmd_reproduce_paper(args) -> int:
    report = reproduce_paper(args.out, samples=args.samples, jobs=args.jobs)
    comparison = report.comparison
    flagged = [c for c in comparison["cells"] if not c["within"]]
    print(
        f"comparison cells {comparison['n_cells']}, "
        f"outside tolerance {comparison['n_outside_tolerance']}"
    )
    for cell in flagged:
        print(
            f"  OUTSIDE {cell['table']}/{cell['scheme']}/{cell['metric']}: "
            f"computed {_fmt(cell['computed'])} vs published {_fmt(cell['published'])} "
            f"(|delta| {_fmt(abs(cell['delta']))} > tol {_fmt(cell['tolerance'])})"
        )
    print(f"wrote artifacts to {args.out}")
    return 0 if not flagged else 3


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="detroc",
        description=(
            "Deterrence-coalition voting rules as binary classifiers: exact ROC "
            "analysis, Youden thresholds, and attack-condition arithmetic."
        ),
        epilog=(
            f"The {OUTPUT_DIR_ENV} environment variable overrides the default "
            "output directory."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("roc", help="ROC curve and AUC for one scheme/environment")
    _add_scheme_flags(p)
    _add_grid_flags(p)
    p.add_argument("--out", help="roc-points CSV path")
    p.add_argument("--svg", help="also draw the curve to this SVG file")
    p.set_defaults(func=cmd_roc)

    p = sub.add_parser("auc", help="AUC for one environment or the built-in battery")
    _add_scheme_flags(p)
    _add_grid_flags(p)
    p.add_argument(
        "--paper-envs",
        action="store_true",
        help="aggregate over the fourteen built-in environments",
    )
    p.set_defaults(func=cmd_auc)

    p = sub.add_parser("youden", help="optimal J statistic and threshold")
    _add_scheme_flags(p)
    _add_grid_flags(p)
    p.set_defaults(func=cmd_youden)

    p = sub.add_parser("game", help="adversary attack condition arithmetic")
    _add_scheme_flags(p)
    p.add_argument("--retaliation", type=float, help="retaliation probability R")
    p.add_argument("--tau", type=float, help="threshold when computing R from a scheme")
    p.add_argument("--benefit", type=float, required=True)
    p.add_argument("--cost", type=float, required=True)
    p.add_argument("--prior", type=float, default=0.5)
    p.set_defaults(func=cmd_game)

    p = sub.add_parser("simulate", help="Monte Carlo cross-check of one tail")
    _add_scheme_flags(p)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("batch", help="run an experiment config file")
    p.add_argument("--config", required=True, help="YAML config path")
    p.add_argument("--out", default=default_output_dir())
    p.add_argument("--jobs", type=int, default=None, help="parallel workers")
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser(
        "reproduce-paper", help="rerun the published experiments and compare"
    )
    p.add_argument("--out", default=default_output_dir())
    p.add_argument("--samples", type=int, default=41)
    p.add_argument("--jobs", type=int, default=None, help="parallel workers")
    p.set_defaults(func=cmd_reproduce_paper)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return int(code) if code is not None else 0
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"detroc: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"detroc: i/o error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
