"""Identification procedures: unadjusted simultaneous testing and four
family-wise-error-controlling p-value adjustments.

Every adjustment maps a vector of raw per-edge p-values (canonical pair
order) to adjusted values in [0, 1].  With P hypotheses and raw values
pi_1..pi_P:

* bonferroni:       min(P * pi, 1)
* sidak:            1 - (1 - pi)^P
* holm-bonferroni:  step-down; with pi_(1) <= ... <= pi_(P),
                    adj_(a) = max_{b<=a} min((P - b + 1) * pi_(b), 1)
* holm-sidak:       step-down; adj_(a) = max_{b<=a} 1 - (1 - pi_(b))^(P-b+1)
* simultaneous:     the identity (per-comparison testing, no control of the
                    family-wise rate)

An edge enters the inferred graph when its adjusted value is strictly below
the significance level.
"""

from __future__ import annotations

import numpy as np

#: procedure names; these exact strings are the CLI and config vocabulary
PROCEDURES = ("simultaneous", "bonferroni", "sidak", "holm-bonferroni", "holm-sidak")


def _checked(raw) -> np.ndarray:
    values = np.array(raw, dtype=float)
    if values.ndim != 1:
        raise ValueError("p-values must form a one-dimensional vector")
    if values.size and (values.min() < 0.0 or values.max() > 1.0):
        raise ValueError("p-values must lie in [0, 1]")
    return values


def _sidak_complement(values: np.ndarray, exponent) -> np.ndarray:
    # 1 - (1 - pi)^m as -expm1(m * log1p(-pi)): stable for tiny pi, and
    # log1p(-1) = -inf carries pi = 1 to exactly 1.
    with np.errstate(divide="ignore", invalid="ignore"):
        out = -np.expm1(exponent * np.log1p(-values))
    # 1-(1-x)^k lies in [x, min(k*x, 1)] exactly; clamping the sub-ulp
    # rounding drift keeps the dominance comparisons against the raw and
    # Bonferroni values true pointwise, not just up to float noise
    return np.clip(out, values, np.minimum(exponent * values, 1.0))


def adjust_simultaneous(raw) -> np.ndarray:
    """Simultaneous testing: the raw p-values, unchanged."""
    return _checked(raw)


def adjust_bonferroni(raw) -> np.ndarray:
    values = _checked(raw)
    return np.minimum(values * values.size, 1.0)


def adjust_sidak(raw) -> np.ndarray:
    values = _checked(raw)
    return _sidak_complement(values, values.size)


def adjust_holm_bonferroni(raw) -> np.ndarray:
    values = _checked(raw)
    m = values.size
    order = np.argsort(values, kind="stable")
    stepped = np.minimum((m - np.arange(m)) * values[order], 1.0)
    adjusted_sorted = np.maximum.accumulate(stepped)
    out = np.empty_like(values)
    out[order] = adjusted_sorted
    return out


def adjust_holm_sidak(raw) -> np.ndarray:
    values = _checked(raw)
    m = values.size
    order = np.argsort(values, kind="stable")
    stepped = _sidak_complement(values[order], m - np.arange(m))
    adjusted_sorted = np.maximum.accumulate(stepped)
    out = np.empty_like(values)
    out[order] = adjusted_sorted
    return out


_ADJUSTERS = {
    "simultaneous": adjust_simultaneous,
    "bonferroni": adjust_bonferroni,
    "sidak": adjust_sidak,
    "holm-bonferroni": adjust_holm_bonferroni,
    "holm-sidak": adjust_holm_sidak,
}


def adjust(raw, procedure: str) -> np.ndarray:
    """Apply the named procedure's adjustment to a raw p-value vector."""
    try:
        fn = _ADJUSTERS[procedure]
    except KeyError:
        raise ValueError(
            f"unknown procedure {procedure!r}; expected one of {PROCEDURES}"
        ) from None
    return fn(raw)


def decide(adjusted, alpha: float) -> np.ndarray:
    """Boolean rejection mask: edge included iff adjusted p-value < alpha.

    The boundary is excluded (strict inequality), so results at a given
    alpha are bit-reproducible.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("significance level must lie strictly inside (0, 1)")
    return np.asarray(adjusted, dtype=float) < alpha
