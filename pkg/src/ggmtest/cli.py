"""Command-line front end.

Subcommands: generate-model, simulate, infer, experiment, plot.  Exit codes
follow a fixed contract: 0 on success, 1 for usage and configuration
errors, 2 for runtime or numerical failures.  Diagnostics go to stderr;
data goes to the paths named by --out / --out-dir.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
from pathlib import Path

import numpy as np

from .adjust import PROCEDURES
from .errors import ConfigError, GgmError
from .experiments import (
    format_float,
    infer_edges,
    load_config,
    results_csv,
    risk_csv,
    roc_csv,
    run_experiment,
)
from .modelgen import GeneratorSpec, generate_model, load_model, sample_mvn, save_model
from .stats import DF_RULES
from .svg import Series, line_chart


class UsageError(Exception):
    """A flag combination or value that fails a subcommand's contract."""


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on usage errors; this CLI reserves 2
    for runtime failures, so usage problems are remapped to exit 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="ggmtest",
        description="Edge structure of Gaussian graphical models via "
        "multiple testing of partial correlations.",
    )
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    gen = sub.add_parser(
        "generate-model",
        help="draw a random sparse concentration matrix and save it as JSON",
    )
    gen.add_argument("--p", type=int, required=True, help="number of variables")
    count = gen.add_mutually_exclusive_group(required=True)
    count.add_argument("--edges", type=int, help="number of edges")
    count.add_argument("--q", type=float, help="edge density in [0, 1]")
    gen.add_argument("--rho-min", type=float, default=0.2, help="smallest magnitude (default 0.2)")
    gen.add_argument("--rho-max", type=float, default=0.55, help="largest magnitude (default 0.55)")
    gen.add_argument("--seed", type=int, default=0, help="generator seed (default 0)")
    gen.add_argument(
        "--random-sign", action="store_true", help="give each edge a random sign"
    )
    gen.add_argument("--out", required=True, help="output model JSON path")
    gen.set_defaults(func=_cmd_generate_model)

    sim = sub.add_parser(
        "simulate", help="sample observations from a saved model into a CSV"
    )
    sim.add_argument("--model", required=True, help="model JSON path")
    sim.add_argument("--n", type=int, required=True, help="number of observations")
    sim.add_argument("--seed", type=int, default=0, help="sampling seed (default 0)")
    sim.add_argument("--out", required=True, help="output data CSV path")
    sim.set_defaults(func=_cmd_simulate)

    inf = sub.add_parser(
        "infer", help="infer the edge set of one dataset and save it as JSON"
    )
    inf.add_argument("--data", required=True, help="data CSV path (one column per variable)")
    inf.add_argument(
        "--procedure",
        choices=PROCEDURES,
        default="simultaneous",
        help="testing procedure (default simultaneous)",
    )
    inf.add_argument("--alpha", type=float, default=0.05, help="significance level (default 0.05)")
    inf.add_argument(
        "--df-rule",
        choices=DF_RULES,
        default=DF_RULES[0],
        help="degrees-of-freedom rule (default %s)" % DF_RULES[0],
    )
    inf.add_argument("--truth", help="optional truth model JSON for a confusion report")
    inf.add_argument("--out", required=True, help="output edge-list JSON path")
    inf.set_defaults(func=_cmd_infer)

    exp = sub.add_parser(
        "experiment", help="run a seeded Monte Carlo experiment from a config file"
    )
    exp.add_argument("--config", required=True, help="experiment config JSON path")
    exp.add_argument("--out-dir", required=True, help="directory for result files")
    exp.add_argument(
        "--workers", type=int, default=1, help="worker processes (default 1)"
    )
    exp.add_argument(
        "--decouple-risk-weight",
        action="store_true",
        help="keep decisions at the config alpha and sweep only the risk weight",
    )
    exp.set_defaults(func=_cmd_experiment)

    plot = sub.add_parser("plot", help="render experiment results as an SVG chart")
    plot.add_argument("--results", required=True, help="results CSV path")
    plot.add_argument(
        "--kind",
        choices=("roc", "risk", "fn-vs-n"),
        required=True,
        help="which chart to draw",
    )
    plot.add_argument("--out", required=True, help="output SVG path")
    plot.set_defaults(func=_cmd_plot)

    return parser


def _cmd_generate_model(args) -> int:
    try:
        spec = GeneratorSpec(
            p=args.p,
            m=args.edges,
            q=args.q,
            rho_min=args.rho_min,
            rho_max=args.rho_max,
            seed=args.seed,
            random_sign=args.random_sign,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    model = generate_model(spec)
    save_model(model, args.out)
    print(f"edges: {len(model.edges)}")
    print(f"delta: {format_float(model.delta)}")
    return 0


def _cmd_simulate(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    model = load_model(args.model)
    data = sample_mvn(model.covariance, args.n, args.seed)
    lines = [",".join(f"Y{j}" for j in range(1, model.p + 1))]
    for row in data:
        lines.append(",".join(format(v, ".10g") for v in row))
    Path(args.out).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return 0


def _read_data_csv(path) -> np.ndarray:
    try:
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    except OSError as exc:
        raise GgmError(f"cannot read data file {path}: {exc}") from None
    except ValueError as exc:
        raise GgmError(f"data file {path} is not a numeric CSV: {exc}") from None
    if data.size == 0 or data.shape[1] < 2:
        raise GgmError(f"data file {path} must have at least 1 row and 2 columns")
    return data


def _cmd_infer(args) -> int:
    if not 0 < args.alpha < 1:
        raise UsageError("--alpha must lie strictly between 0 and 1")
    data = _read_data_csv(args.data)
    result = infer_edges(data, args.procedure, args.alpha, args.df_rule)
    payload = {
        "edges": [[i, j] for i, j in sorted(result.edges)],
        "adjusted_pvalues": [float(v) for v in result.adjusted],
    }
    Path(args.out).write_text(
        json.dumps(payload, indent=2) + "\n", encoding="utf-8"
    )
    if args.truth:
        from .metrics import confusion

        truth = load_model(args.truth)
        if truth.p != result.p:
            raise GgmError(
                f"truth model has p={truth.p} but the data has {result.p} columns"
            )
        counts = confusion(truth.edges, result.edges, result.p)
        print(
            f"tp={counts.tp} fp={counts.fp} tn={counts.tn} fn={counts.fn}"
        )
    return 0


def _cmd_experiment(args) -> int:
    if args.workers < 1:
        raise UsageError("--workers must be at least 1")
    config_path = Path(args.config)
    config = load_config(config_path)
    config_bytes = config_path.read_bytes()
    result = run_experiment(
        config,
        workers=args.workers,
        decouple_risk_weight=args.decouple_risk_weight,
    )
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "results.csv").write_text(results_csv(result.summaries), encoding="utf-8")
    (out_dir / "risk.csv").write_text(risk_csv(result.summaries), encoding="utf-8")
    (out_dir / "roc.csv").write_text(roc_csv(result.pooled_curves), encoding="utf-8")
    manifest = {
        "config_sha256": hashlib.sha256(config_bytes).hexdigest(),
        "master_seed": config.master_seed,
        "trials": config.trials,
        "failed_trials": [
            {"n": n, "count": result.failed_trials[n]} for n in config.n_list
        ],
    }
    (out_dir / "manifest.json").write_text(
        json.dumps(manifest, indent=2) + "\n", encoding="utf-8"
    )
    return 0


def _read_results_rows(path, required: set[str]) -> list[dict]:
    try:
        with open(path, newline="", encoding="utf-8") as handle:
            reader = csv.DictReader(handle)
            fields = reader.fieldnames or []
            rows = list(reader)
    except OSError as exc:
        raise GgmError(f"cannot read results file {path}: {exc}") from None
    missing = required - set(fields)
    if missing:
        raise GgmError(
            f"results file {path} lacks required columns: {', '.join(sorted(missing))}"
        )
    if not rows:
        raise GgmError(f"results file {path} contains no data rows")
    return rows


def _series_label(procedure: str, n: str, multiple_n: bool) -> str:
    return f"{procedure}, n={n}" if multiple_n else procedure


def _grouped_series(rows, x_col: str, y_col: str, split_by_n: bool = True) -> list[Series]:
    """One series per (procedure, n) pair, or per procedure alone when n
    itself is the x axis."""
    multiple_n = len({row["n"] for row in rows}) > 1
    order: list[tuple[str, ...]] = []
    points: dict[tuple[str, ...], list[tuple[float, float]]] = {}
    for row in rows:
        key = (row["procedure"], row["n"]) if split_by_n else (row["procedure"],)
        if key not in points:
            points[key] = []
            order.append(key)
        points[key].append((float(row[x_col]), float(row[y_col])))
    series = []
    for key in order:
        xs, ys = zip(*points[key])
        if split_by_n:
            label = _series_label(key[0], key[1], multiple_n)
        else:
            label = key[0]
        series.append(Series(label, xs, ys))
    return series


def _cmd_plot(args) -> int:
    if args.kind == "roc":
        rows = _read_results_rows(args.results, {"procedure", "n", "x", "y"})
        chart = line_chart(
            _grouped_series(rows, "x", "y"),
            x_label="1 - specificity",
            y_label="sensitivity",
            title="ROC",
            x_range=(0.0, 1.0),
            y_range=(0.0, 1.0),
        )
    elif args.kind == "risk":
        rows = _read_results_rows(args.results, {"procedure", "n", "alpha_weight", "risk"})
        chart = line_chart(
            _grouped_series(rows, "alpha_weight", "risk"),
            x_label="alpha",
            y_label="risk",
            title="Risk function",
        )
    else:
        rows = _read_results_rows(args.results, {"procedure", "n", "mean_fn"})
        chart = line_chart(
            _grouped_series(rows, "n", "mean_fn", split_by_n=False),
            x_label="n",
            y_label="mean false negatives",
            title="False negatives vs sample size",
        )
    Path(args.out).write_text(chart, encoding="utf-8")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"ggmtest {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except ConfigError as exc:
        print(f"ggmtest {args.command}: invalid configuration:", file=sys.stderr)
        for violation in exc.violations:
            print(f"  - {violation}", file=sys.stderr)
        return 1
    except (GgmError, OSError, ValueError) as exc:
        print(f"ggmtest {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
