"""Error accounting for inferred graphs: confusion counts, FWER, FDR, the
weighted risk function, and ROC curves with trapezoidal AUC.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .edges import mask_from_edges, n_pairs, p_from_n_pairs
from .errors import DegenerateTruthError


@dataclass(frozen=True)
class ConfusionCounts:
    """Edge-level confusion counts for one inferred graph.

    tp/fn split the true edges, fp/tn split the non-edges, so the four
    counts always sum to the number of vertex pairs.
    """

    tp: int
    fp: int
    tn: int
    fn: int

    def __post_init__(self):
        for field in ("tp", "fp", "tn", "fn"):
            if getattr(self, field) < 0:
                raise ValueError(f"{field} must be nonnegative")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


@dataclass(frozen=True)
class RiskValue:
    """The weighted error count E(FP)*(1-alpha) + E(FN)*alpha."""

    alpha: float
    value: float


@dataclass(frozen=True)
class RocCurve:
    """An ROC step curve as an ordered tuple of (1-specificity, sensitivity)
    points, from (0, 0) to (1, 1)."""

    points: tuple[tuple[float, float], ...]

    @property
    def x(self) -> np.ndarray:
        return np.array([pt[0] for pt in self.points])

    @property
    def y(self) -> np.ndarray:
        return np.array([pt[1] for pt in self.points])


def confusion(truth, inferred, p: int) -> ConfusionCounts:
    """Compare an inferred edge set against the truth over p vertices."""
    true_set = frozenset((int(i), int(j)) for i, j in truth)
    found = frozenset((int(i), int(j)) for i, j in inferred)
    tp = len(true_set & found)
    fp = len(found - true_set)
    fn = len(true_set - found)
    tn = n_pairs(p) - tp - fp - fn
    return ConfusionCounts(tp=tp, fp=fp, tn=tn, fn=fn)


def confusion_from_masks(truth_mask, inferred_mask) -> ConfusionCounts:
    """Confusion counts from aligned boolean vectors over the pair order."""
    truth = np.asarray(truth_mask, dtype=bool)
    inferred = np.asarray(inferred_mask, dtype=bool)
    if truth.shape != inferred.shape:
        raise ValueError("truth and inferred masks must have the same length")
    tp = int(np.count_nonzero(truth & inferred))
    fp = int(np.count_nonzero(~truth & inferred))
    tn = int(np.count_nonzero(~truth & ~inferred))
    fn = int(np.count_nonzero(truth & ~inferred))
    return ConfusionCounts(tp=tp, fp=fp, tn=tn, fn=fn)


def fwer(trial_fp_counts) -> float:
    """Fraction of trials that made at least one false discovery."""
    counts = np.asarray(trial_fp_counts)
    if counts.size == 0:
        raise ValueError("need at least one trial to estimate FWER")
    return float(np.count_nonzero(counts > 0) / counts.size)


def fdr(counts: ConfusionCounts) -> float:
    """False discovery proportion fp / (fp + tp), taken as 0 when nothing
    was discovered."""
    discovered = counts.fp + counts.tp
    if discovered == 0:
        return 0.0
    return counts.fp / discovered


def risk(mean_fp: float, mean_fn: float, alpha: float) -> RiskValue:
    """Weighted sum of expected error counts: fp weighted by 1-alpha, fn
    by alpha."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    if mean_fp < 0 or mean_fn < 0:
        raise ValueError("mean error counts must be nonnegative")
    return RiskValue(alpha=alpha, value=mean_fp * (1.0 - alpha) + mean_fn * alpha)


def _truth_mask(truth, length: int) -> np.ndarray:
    if isinstance(truth, np.ndarray) and truth.dtype == bool:
        if truth.shape != (length,):
            raise ValueError("truth mask does not match the adjusted values")
        return truth
    return mask_from_edges(truth, p_from_n_pairs(length))


def roc_curve(adjusted, truth) -> RocCurve:
    """Sweep rejection thresholds over one vector of adjusted p-values.

    The thresholds are 0, each distinct adjusted value, and a value above 1,
    applied with the strict rule "reject when adjusted < threshold"; each
    yields one (1-specificity, sensitivity) point and consecutive duplicate
    points are dropped.  ``truth`` may be an edge set or a boolean mask
    aligned with ``adjusted``.

    Raises :class:`DegenerateTruthError` when the truth has no edges or no
    missing edges, since one of the two rates is then undefined.
    """
    adj = np.asarray(adjusted, dtype=float)
    if adj.ndim != 1 or adj.size == 0:
        raise ValueError("adjusted p-values must form a nonempty vector")
    mask = _truth_mask(truth, adj.size)
    positives = int(np.count_nonzero(mask))
    negatives = mask.size - positives
    if positives == 0 or negatives == 0:
        raise DegenerateTruthError(
            "ROC needs at least one true edge and one true non-edge"
        )
    points: list[tuple[float, float]] = [(0.0, 0.0)]
    for theta in np.unique(adj):
        rejected = adj < theta
        point = (
            np.count_nonzero(rejected & ~mask) / negatives,
            np.count_nonzero(rejected & mask) / positives,
        )
        if point != points[-1]:
            points.append(point)
    if points[-1] != (1.0, 1.0):
        points.append((1.0, 1.0))
    return RocCurve(points=tuple(points))


def auc(curve: RocCurve) -> float:
    """Trapezoidal area under a piecewise-linear ROC curve."""
    return float(np.trapezoid(curve.y, curve.x))
