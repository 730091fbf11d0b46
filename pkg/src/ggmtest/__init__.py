"""Edge structure of Gaussian graphical models via multiple testing of
partial correlations, with a seeded Monte Carlo harness for error-rate
studies (FWER, FDR, risk, ROC/AUC)."""

from .adjust import (
    PROCEDURES,
    adjust,
    adjust_bonferroni,
    adjust_holm_bonferroni,
    adjust_holm_sidak,
    adjust_sidak,
    adjust_simultaneous,
    decide,
)
from .datasets import SEVEN_NODE_CONCENTRATION, SEVEN_NODE_EDGES, seven_node_model
from .edges import edge_pairs, edges_from_mask, mask_from_edges, n_pairs, pair_index
from .errors import (
    ConfigError,
    DegenerateSampleError,
    DegenerateTruthError,
    GenerationError,
    GgmError,
    InsufficientSampleError,
)
from .experiments import (
    ExperimentConfig,
    ExperimentResult,
    InferenceResult,
    SummaryRow,
    TrialResult,
    config_from_dict,
    derive_seed,
    infer_edges,
    load_config,
    run_experiment,
    run_trial,
)
from .metrics import (
    ConfusionCounts,
    RiskValue,
    RocCurve,
    auc,
    confusion,
    confusion_from_masks,
    fdr,
    fwer,
    risk,
    roc_curve,
)
from .modelgen import (
    GeneratorSpec,
    TrueModel,
    covariance_from_concentration,
    generate_model,
    load_model,
    model_from_concentration,
    repair_positive_definite,
    sample_mvn,
    save_model,
)
from .stats import (
    DF_RULES,
    concentration_from_covariance,
    edge_pvalues,
    edges_from_concentration,
    partial_correlations,
    sample_covariance,
    sample_mean,
    student_t_two_sided,
)

__version__ = "0.1.0"

__all__ = [
    "PROCEDURES",
    "DF_RULES",
    "adjust",
    "adjust_simultaneous",
    "adjust_bonferroni",
    "adjust_sidak",
    "adjust_holm_bonferroni",
    "adjust_holm_sidak",
    "decide",
    "ConfigError",
    "ConfusionCounts",
    "DegenerateSampleError",
    "DegenerateTruthError",
    "ExperimentConfig",
    "ExperimentResult",
    "GenerationError",
    "GeneratorSpec",
    "GgmError",
    "InferenceResult",
    "InsufficientSampleError",
    "RiskValue",
    "RocCurve",
    "SEVEN_NODE_CONCENTRATION",
    "SEVEN_NODE_EDGES",
    "SummaryRow",
    "TrialResult",
    "TrueModel",
    "auc",
    "concentration_from_covariance",
    "config_from_dict",
    "confusion",
    "confusion_from_masks",
    "covariance_from_concentration",
    "derive_seed",
    "edge_pairs",
    "edge_pvalues",
    "edges_from_concentration",
    "edges_from_mask",
    "fdr",
    "fwer",
    "generate_model",
    "infer_edges",
    "load_config",
    "load_model",
    "mask_from_edges",
    "model_from_concentration",
    "n_pairs",
    "pair_index",
    "partial_correlations",
    "repair_positive_definite",
    "risk",
    "roc_curve",
    "run_experiment",
    "run_trial",
    "sample_covariance",
    "sample_mean",
    "sample_mvn",
    "save_model",
    "seven_node_model",
    "student_t_two_sided",
]
