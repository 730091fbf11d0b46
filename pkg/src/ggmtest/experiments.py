"""Seeded Monte Carlo harness.

One experiment fixes a ground-truth model, then for every requested sample
size draws many datasets, runs every testing procedure on each dataset
(paired comparison), and aggregates error rates, risk curves, and ROC
summaries.  Every random draw is derived from a single 64-bit master seed,
so results are bit-identical across runs and across worker counts.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .adjust import PROCEDURES, adjust, decide
from .edges import edges_from_mask
from .errors import (
    ConfigError,
    DegenerateSampleError,
    GgmError,
    InsufficientSampleError,
)
from .metrics import (
    ConfusionCounts,
    RiskValue,
    RocCurve,
    auc,
    confusion_from_masks,
    risk,
    roc_curve,
)
from .modelgen import GeneratorSpec, TrueModel, generate_model, load_model, sample_mvn
from .stats import (
    DF_RULES,
    concentration_from_covariance,
    edge_pvalues,
    partial_correlations,
    sample_covariance,
)

RESULTS_HEADER = "procedure,n,alpha,trials,failed_trials,fwer_hat,p_fn_pos,mean_fp,mean_fn,mean_auc"
RISK_HEADER = "procedure,n,alpha_weight,risk"
ROC_HEADER = "procedure,n,x,y"

#: keys allowed in an experiment config document
CONFIG_KEYS = frozenset(
    {
        "model",
        "p",
        "q",
        "m",
        "rho_min",
        "rho_max",
        "random_sign",
        "n_list",
        "procedures",
        "alpha",
        "alpha_grid",
        "trials",
        "master_seed",
        "df_rule",
    }
)

DEFAULT_ALPHA = 0.05
DEFAULT_TRIALS = 1000
DEFAULT_ALPHA_GRID = tuple(k / 20 for k in range(21))

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
#: salt mixed into a trial seed before re-drawing a degenerate sample
RETRY_SALT = 0xBB67AE8584CAA73B
_MAX_REDRAWS = 100


def splitmix64(state: int) -> int:
    """One output of the splitmix64 generator started at ``state``."""
    z = (state + _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(master_seed: int, stream: int) -> int:
    """Seed for one numbered stream of an experiment.

    Stream k maps to the k-th splitmix64 output of the master seed, so any
    stream can be derived independently of the others — trials can run in
    any order, on any number of workers, and still see the same seeds.
    Stream 0 seeds the model generator; stream 1 + i·trials + t seeds
    trial t of the i-th sample size.
    """
    return splitmix64((master_seed + stream * _GOLDEN) & _MASK64)


def retry_seed(seed: int) -> int:
    """Replacement seed after a degenerate draw (iterable for repeats)."""
    return splitmix64(seed ^ RETRY_SALT)


@dataclass(frozen=True)
class ExperimentConfig:
    """A complete experiment description.

    The model is either a generator recipe (whose seed is derived from the
    master seed) or a path to a model file.  ``alpha`` is the decision
    level; ``alpha_grid`` lists the weights at which risk curves are
    evaluated.
    """

    model_spec: GeneratorSpec | None
    model_path: str | None
    n_list: tuple[int, ...]
    procedures: tuple[str, ...]
    alpha: float = DEFAULT_ALPHA
    alpha_grid: tuple[float, ...] = DEFAULT_ALPHA_GRID
    trials: int = DEFAULT_TRIALS
    master_seed: int = 0
    df_rule: str = "n-p"


@dataclass(frozen=True)
class TrialResult:
    """Outcome of one procedure on one simulated dataset."""

    trial_index: int
    n: int
    procedure: str
    confusion: ConfusionCounts
    auc: float
    raw: np.ndarray | None = None
    adjusted: np.ndarray | None = None


@dataclass(frozen=True)
class SummaryRow:
    """Aggregates for one (procedure, n) cell of an experiment."""

    procedure: str
    n: int
    alpha: float
    trials: int
    failed_trials: int
    fwer_hat: float
    p_fn_pos: float
    mean_fp: float
    mean_fn: float
    mean_auc: float
    risk_values: tuple[RiskValue, ...] = ()
    seed: int = 0


@dataclass(frozen=True)
class ExperimentResult:
    """Everything an experiment produces, before serialization."""

    config: ExperimentConfig
    model: TrueModel
    summaries: tuple[SummaryRow, ...]
    pooled_curves: dict = field(default_factory=dict)
    failed_trials: dict = field(default_factory=dict)


@dataclass(frozen=True)
class InferenceResult:
    """Single-shot structure inference from one dataset."""

    edges: frozenset[tuple[int, int]]
    raw: np.ndarray
    adjusted: np.ndarray
    p: int


def config_from_dict(doc: dict) -> ExperimentConfig:
    """Build an :class:`ExperimentConfig` from a parsed JSON document.

    Every schema violation is collected; if there are any, a single
    :class:`ConfigError` listing all of them is raised, so a bad config is
    reported completely in one round trip.
    """
    violations: list[str] = []
    if not isinstance(doc, dict):
        raise ConfigError(["config document must be a JSON object"])
    for key in sorted(set(doc) - CONFIG_KEYS):
        violations.append(f"unknown key {key!r}")

    def _get(key, default=None):
        return doc.get(key, default)

    model_path = _get("model")
    if model_path is not None and not isinstance(model_path, str):
        violations.append("model must be a path string")
        model_path = None

    p = _get("p")
    q = _get("q")
    m = _get("m")
    generator_keys = [k for k in ("p", "q", "m", "rho_min", "rho_max", "random_sign") if k in doc]
    if model_path is not None and generator_keys:
        violations.append(
            "model path and generator keys (" + ", ".join(generator_keys) + ") are mutually exclusive"
        )
    if model_path is None:
        if p is None:
            violations.append("either model or p is required")
        elif not isinstance(p, int) or isinstance(p, bool) or p < 2:
            violations.append("p must be an integer >= 2")
        if (q is None) == (m is None):
            violations.append("exactly one of q and m is required with p")
        if q is not None and not (isinstance(q, (int, float)) and not isinstance(q, bool) and 0 <= q <= 1):
            violations.append("q must be a number in [0, 1]")
        if m is not None and (not isinstance(m, int) or isinstance(m, bool) or m < 0):
            violations.append("m must be a nonnegative integer")

    rho_min = _get("rho_min", 0.2)
    rho_max = _get("rho_max", 0.55)
    if not (isinstance(rho_min, (int, float)) and isinstance(rho_max, (int, float))) or not (
        0 < rho_min <= rho_max < 1
    ):
        violations.append("need 0 < rho_min <= rho_max < 1")
    random_sign = _get("random_sign", False)
    if not isinstance(random_sign, bool):
        violations.append("random_sign must be a boolean")
        random_sign = False

    n_list = _get("n_list")
    if (
        not isinstance(n_list, list)
        or not n_list
        or not all(isinstance(n, int) and not isinstance(n, bool) and n >= 1 for n in n_list)
    ):
        violations.append("n_list must be a nonempty list of positive integers")
        n_list = []
    elif len(set(n_list)) != len(n_list):
        violations.append("n_list contains duplicates")

    procedures = _get("procedures")
    if not isinstance(procedures, list) or not procedures:
        violations.append("procedures must be a nonempty list")
        procedures = []
    else:
        for name in procedures:
            if name not in PROCEDURES:
                violations.append(
                    f"unknown procedure {name!r}; choose from {', '.join(PROCEDURES)}"
                )
        if len(set(procedures)) != len(procedures):
            violations.append("procedures contains duplicates")

    alpha = _get("alpha", DEFAULT_ALPHA)
    if not isinstance(alpha, (int, float)) or isinstance(alpha, bool) or not 0 < alpha < 1:
        violations.append("alpha must lie strictly between 0 and 1")
        alpha = DEFAULT_ALPHA

    alpha_grid = _get("alpha_grid", list(DEFAULT_ALPHA_GRID))
    if not isinstance(alpha_grid, list) or not all(
        isinstance(a, (int, float)) and not isinstance(a, bool) and 0 <= a <= 1 for a in alpha_grid
    ):
        violations.append("alpha_grid must be a list of weights in [0, 1]")
        alpha_grid = []

    trials = _get("trials", DEFAULT_TRIALS)
    if not isinstance(trials, int) or isinstance(trials, bool) or trials < 1:
        violations.append("trials must be a positive integer")
        trials = DEFAULT_TRIALS

    master_seed = _get("master_seed", 0)
    if not isinstance(master_seed, int) or isinstance(master_seed, bool) or not 0 <= master_seed <= _MASK64:
        violations.append("master_seed must be an unsigned 64-bit integer")
        master_seed = 0

    df_rule = _get("df_rule", DF_RULES[0])
    if df_rule not in DF_RULES:
        violations.append(f"df_rule must be one of {', '.join(DF_RULES)}")
        df_rule = DF_RULES[0]

    spec = None
    if model_path is None and not violations:
        spec = GeneratorSpec(
            p=p,
            m=m,
            q=q,
            rho_min=float(rho_min),
            rho_max=float(rho_max),
            seed=derive_seed(master_seed, 0),
            random_sign=random_sign,
        )
        for n in n_list:
            if n < p + 2:
                violations.append(f"n = {n} is below the minimum p + 2 = {p + 2}")

    if violations:
        raise ConfigError(violations)
    return ExperimentConfig(
        model_spec=spec,
        model_path=model_path,
        n_list=tuple(n_list),
        procedures=tuple(procedures),
        alpha=float(alpha),
        alpha_grid=tuple(float(a) for a in alpha_grid),
        trials=trials,
        master_seed=master_seed,
        df_rule=df_rule,
    )


def load_config(path) -> ExperimentConfig:
    """Read and validate an experiment config JSON file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise GgmError(f"cannot read config file {path}: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([f"config file {path} is not valid JSON: {exc}"]) from None
    return config_from_dict(doc)


def resolve_model(config: ExperimentConfig) -> TrueModel:
    """Materialize the experiment's single ground-truth model."""
    if config.model_path is not None:
        model = load_model(config.model_path)
        bad = [n for n in config.n_list if n < model.p + 2]
        if bad:
            raise ConfigError(
                [f"n = {n} is below the minimum p + 2 = {model.p + 2}" for n in bad]
            )
        return model
    return generate_model(config.model_spec)


def infer_edges(data, procedure: str = "simultaneous", alpha: float = DEFAULT_ALPHA,
                df_rule: str = "n-p") -> InferenceResult:
    """Run the whole single-dataset pipeline: covariance, concentration,
    partial correlations, edge p-values, adjustment, decision."""
    sample = np.asarray(data, dtype=float)
    n, p = sample.shape
    if n < p + 2:
        raise InsufficientSampleError(
            f"edge tests need n >= p + 2 observations; got n={n} with p={p}"
        )
    cov = sample_covariance(sample)
    conc = concentration_from_covariance(cov)
    pcorr = partial_correlations(conc)
    raw = edge_pvalues(pcorr, n, df_rule=df_rule)
    adjusted = adjust(raw, procedure)
    mask = decide(adjusted, alpha)
    return InferenceResult(
        edges=edges_from_mask(mask, p), raw=raw, adjusted=adjusted, p=p
    )


def run_trial(model: TrueModel, n: int, procedures, alpha: float, trial_seed: int,
              df_rule: str = "n-p", trial_index: int = 0,
              keep_pvalues: bool = True) -> list[TrialResult]:
    """Draw one dataset and apply every procedure to it.

    Raw p-values are computed once, so the procedures see exactly the same
    evidence (paired comparison).  The per-trial AUC is NaN when the truth
    has no edges or no non-edges, since the ROC curve is undefined there.

    Degenerate samples raise :class:`DegenerateSampleError`; the experiment
    driver catches this and re-draws with a derived seed.
    """
    sample = sample_mvn(model.covariance, n, trial_seed)
    cov = sample_covariance(sample)
    conc = concentration_from_covariance(cov)
    pcorr = partial_correlations(conc)
    raw = edge_pvalues(pcorr, n, df_rule=df_rule)
    truth = model.edge_mask()
    n_edges = int(np.count_nonzero(truth))
    degenerate_truth = n_edges == 0 or n_edges == truth.size
    results = []
    for procedure in procedures:
        adjusted = adjust(raw, procedure)
        decisions = decide(adjusted, alpha)
        counts = confusion_from_masks(truth, decisions)
        if degenerate_truth:
            area = float("nan")
        else:
            area = auc(roc_curve(adjusted, truth))
        results.append(
            TrialResult(
                trial_index=trial_index,
                n=n,
                procedure=procedure,
                confusion=counts,
                auc=area,
                raw=raw if keep_pvalues else None,
                adjusted=adjusted if keep_pvalues else None,
            )
        )
    return results


def _run_with_redraw(model, n, procedures, alpha, trial_seed, df_rule, trial_index):
    """Run one trial, re-drawing on degenerate samples.  Returns the trial
    results plus the number of failed draws."""
    seed = trial_seed
    for failures in range(_MAX_REDRAWS + 1):
        try:
            return run_trial(
                model, n, procedures, alpha, seed, df_rule, trial_index
            ), failures
        except DegenerateSampleError:
            seed = retry_seed(seed)
    raise GgmError(
        f"trial {trial_index} at n={n} kept producing degenerate samples "
        f"after {_MAX_REDRAWS} re-draws"
    )


_WORKER_ARGS = None


def _init_worker(model, procedures, alpha, df_rule):
    global _WORKER_ARGS
    _WORKER_ARGS = (model, procedures, alpha, df_rule)


def _worker_task(task):
    n, trial_index, seed = task
    model, procedures, alpha, df_rule = _WORKER_ARGS
    results, failures = _run_with_redraw(
        model, n, procedures, alpha, seed, df_rule, trial_index
    )
    return n, trial_index, results, failures


def run_experiment(config: ExperimentConfig, workers: int = 1,
                   decouple_risk_weight: bool = False,
                   include_pooled: bool = True) -> ExperimentResult:
    """Execute a full experiment and aggregate per-(procedure, n) summaries.

    ``workers`` > 1 runs trials in worker processes; the output is
    bit-identical to the single-process run because every trial's seed is
    derived from (master_seed, n index, trial index) alone and aggregation
    always proceeds in trial order.

    Risk curves re-decide each trial at every grid value and weight the
    resulting error means by that same value.  With
    ``decouple_risk_weight`` the decision threshold stays at
    ``config.alpha`` and only the weight sweeps the grid.
    """
    model = resolve_model(config)
    trials = config.trials
    grid = np.asarray(config.alpha_grid, dtype=float)
    truth = model.edge_mask()
    n_edges = int(np.count_nonzero(truth))

    tasks = []
    for n_index, n in enumerate(config.n_list):
        for t in range(trials):
            seed = derive_seed(config.master_seed, 1 + n_index * trials + t)
            tasks.append((n, t, seed))

    collected: dict[tuple[int, int], tuple[list[TrialResult], int]] = {}
    if workers > 1:
        chunk = max(1, len(tasks) // (workers * 8))
        with ProcessPoolExecutor(
            max_workers=workers,
            initializer=_init_worker,
            initargs=(model, config.procedures, config.alpha, config.df_rule),
        ) as pool:
            for n, t, results, failures in pool.map(_worker_task, tasks, chunksize=chunk):
                collected[(n, t)] = (results, failures)
    else:
        for n, t, seed in tasks:
            collected[(n, t)] = _run_with_redraw(
                model, n, config.procedures, config.alpha, seed,
                config.df_rule, t,
            )

    summaries = []
    pooled_curves: dict[tuple[str, int], RocCurve] = {}
    failed_by_n: dict[int, int] = {}
    for n in config.n_list:
        failed_by_n[n] = sum(collected[(n, t)][1] for t in range(trials))
    for procedure in config.procedures:
        proc_pos = config.procedures.index(procedure)
        for n in config.n_list:
            fp = np.empty(trials, dtype=int)
            fn = np.empty(trials, dtype=int)
            aucs = np.empty(trials)
            fp_grid = np.zeros(grid.size)
            fn_grid = np.zeros(grid.size)
            pooled = []
            for t in range(trials):
                result = collected[(n, t)][0][proc_pos]
                fp[t] = result.confusion.fp
                fn[t] = result.confusion.fn
                aucs[t] = result.auc
                adjusted = result.adjusted
                if grid.size:
                    non_edge = np.sort(adjusted[~truth])
                    edge = np.sort(adjusted[truth])
                    fp_grid += np.searchsorted(non_edge, grid, side="left")
                    fn_grid += n_edges - np.searchsorted(edge, grid, side="left")
                pooled.append(adjusted)
            if decouple_risk_weight:
                risk_values = tuple(
                    risk(float(fp.mean()), float(fn.mean()), float(a)) for a in grid
                )
            else:
                risk_values = tuple(
                    risk(fp_grid[k] / trials, fn_grid[k] / trials, float(grid[k]))
                    for k in range(grid.size)
                )
            summaries.append(
                SummaryRow(
                    procedure=procedure,
                    n=n,
                    alpha=config.alpha,
                    trials=trials,
                    failed_trials=failed_by_n[n],
                    fwer_hat=float(np.count_nonzero(fp > 0) / trials),
                    p_fn_pos=float(np.count_nonzero(fn > 0) / trials),
                    mean_fp=float(fp.mean()),
                    mean_fn=float(fn.mean()),
                    mean_auc=float(aucs.mean()),
                    risk_values=risk_values,
                    seed=config.master_seed,
                )
            )
            if include_pooled and 0 < n_edges < truth.size:
                pooled_curves[(procedure, n)] = roc_curve(
                    np.concatenate(pooled), np.tile(truth, trials)
                )
    return ExperimentResult(
        config=config,
        model=model,
        summaries=tuple(summaries),
        pooled_curves=pooled_curves,
        failed_trials=failed_by_n,
    )


def format_float(value: float) -> str:
    """Render a float with 6 significant digits, '.' decimal separator."""
    return format(float(value), ".6g")


def results_csv(summaries) -> str:
    """The results table as CSV text (one row per procedure and n)."""
    lines = [RESULTS_HEADER]
    for row in summaries:
        lines.append(
            ",".join(
                [
                    row.procedure,
                    str(row.n),
                    format_float(row.alpha),
                    str(row.trials),
                    str(row.failed_trials),
                    format_float(row.fwer_hat),
                    format_float(row.p_fn_pos),
                    format_float(row.mean_fp),
                    format_float(row.mean_fn),
                    format_float(row.mean_auc),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def risk_csv(summaries) -> str:
    """Risk-curve values as CSV text (one row per procedure, n, weight)."""
    lines = [RISK_HEADER]
    for row in summaries:
        for rv in row.risk_values:
            lines.append(
                ",".join(
                    [
                        row.procedure,
                        str(row.n),
                        format_float(rv.alpha),
                        format_float(rv.value),
                    ]
                )
            )
    return "\n".join(lines) + "\n"


def roc_csv(pooled_curves) -> str:
    """Pooled ROC curves as CSV text (one row per curve point)."""
    lines = [ROC_HEADER]
    for (procedure, n), curve in pooled_curves.items():
        for x, y in curve.points:
            lines.append(
                ",".join([procedure, str(n), format_float(x), format_float(y)])
            )
    return "\n".join(lines) + "\n"
