"""Sample moments, concentration matrices, partial correlations, and the
per-edge tests of conditional independence.

Matrix-valued functions take and return plain numpy arrays.  Edge-indexed
vectors (p-values) follow the canonical pair order of :mod:`ggmtest.edges`.
"""

from __future__ import annotations

import numpy as np
from scipy import linalg as sla
from scipy import special

from .edges import edge_pairs
from .errors import DegenerateSampleError, InsufficientSampleError

#: supported degrees-of-freedom rules for the partial-correlation test
DF_RULES = ("n-p", "n-p-2")

#: a Cholesky pivot at or below this fraction of the mean diagonal entry
#: marks the matrix as numerically singular
PIVOT_RTOL = 1e-10

#: |r| within this distance of 1 is treated as a perfect correlation
UNIT_CORR_TOL = 1e-12


def _as_data(data) -> np.ndarray:
    data = np.asarray(data, dtype=float)
    if data.ndim != 2:
        raise ValueError("observation matrix must be two-dimensional")
    if not np.all(np.isfinite(data)):
        raise ValueError("observation matrix contains non-finite entries")
    return data


def _spd_cholesky(matrix: np.ndarray, error: type[Exception], what: str) -> np.ndarray:
    """Lower Cholesky factor, raising ``error`` if the matrix is not
    numerically positive definite (failed factorization or a pivot at or
    below ``PIVOT_RTOL`` times the mean diagonal entry)."""
    p = matrix.shape[0]
    try:
        lower = np.linalg.cholesky(matrix)
    except np.linalg.LinAlgError:
        raise error(f"{what} is not positive definite") from None
    pivots = np.diag(lower) ** 2
    scale = np.trace(matrix) / p
    if np.min(pivots) <= PIVOT_RTOL * scale:
        raise error(f"{what} is numerically singular (pivot {np.min(pivots):.3e})")
    return lower


def spd_inverse(matrix: np.ndarray, error: type[Exception] = ValueError, what: str = "matrix") -> np.ndarray:
    """Invert a symmetric positive-definite matrix via its Cholesky factor
    and triangular solves; the result is symmetrized exactly."""
    lower = _spd_cholesky(matrix, error, what)
    inv_lower = sla.solve_triangular(lower, np.eye(matrix.shape[0]), lower=True)
    inv = inv_lower.T @ inv_lower
    return (inv + inv.T) / 2.0


def sample_mean(data) -> np.ndarray:
    """Per-variable mean of an n x p observation matrix."""
    return _as_data(data).mean(axis=0)


def sample_covariance(data) -> np.ndarray:
    """Sample covariance with denominator n - 1.

    Raises :class:`DegenerateSampleError` when the result is numerically
    singular and a nonsingular sample was possible (n > p).  For n <= p the
    sample covariance is singular by construction and is returned as-is;
    inversion is the step that rejects it.
    """
    data = _as_data(data)
    n, p = data.shape
    if n < 2:
        raise InsufficientSampleError(
            "sample covariance needs at least two observations"
        )
    centered = data - data.mean(axis=0)
    cov = centered.T @ centered / (n - 1)
    cov = (cov + cov.T) / 2.0
    if n > p:
        _spd_cholesky(cov, DegenerateSampleError, "sample covariance")
    return cov


def concentration_from_covariance(cov) -> np.ndarray:
    """Invert a covariance matrix into concentration form.

    Raises :class:`DegenerateSampleError` when the Cholesky factorization
    fails or a pivot collapses.
    """
    cov = np.asarray(cov, dtype=float)
    return spd_inverse(cov, DegenerateSampleError, "covariance matrix")


def partial_correlations(concentration) -> np.ndarray:
    """Scale a concentration matrix K to partial-correlation form.

    Entry (i, j) is K_ij / sqrt(K_ii * K_jj); the diagonal is set to 1
    exactly and off-diagonal values are clipped to [-1, 1].  Note the sign:
    this is the raw scaled concentration entry, not its negation, so values
    here and the conventional partial correlation differ by sign.  Two-sided
    tests on |r| are unaffected.
    """
    conc = np.asarray(concentration, dtype=float)
    diag = np.diag(conc)
    if np.any(diag <= 0):
        raise ValueError("concentration matrix must have positive diagonal")
    scale = np.sqrt(diag)
    rho = conc / np.outer(scale, scale)
    np.fill_diagonal(rho, 1.0)
    return np.clip(rho, -1.0, 1.0)


def student_t_two_sided(t, df: int):
    """Two-sided tail probability 2 * (1 - F(|t|)) of Student's t.

    Evaluated through the regularized incomplete beta function
    I_x(df/2, 1/2) with x = df / (df + t^2), which equals the two-sided
    tail exactly.  Accepts scalars or arrays.
    """
    if df < 1:
        raise ValueError("degrees of freedom must be at least 1")
    t = np.asarray(t, dtype=float)
    x = df / (df + t * t)
    out = special.betainc(df / 2.0, 0.5, x)
    if out.ndim == 0:
        return float(out)
    return out


def edge_pvalues(partial_corr, n: int, df_rule: str = "n-p") -> np.ndarray:
    """Two-sided p-values for every edge, under the null of a zero partial
    correlation.

    The statistic is t = r * sqrt(df) / sqrt(1 - r^2) with df = n - p by
    default (conditioning on the p - 2 remaining variables); ``df_rule``
    may be "n-p-2" for the alternative convention.  Values of |r| within
    ``UNIT_CORR_TOL`` of 1 map to a p-value of 0.  The output follows the
    canonical pair order.
    """
    rho = np.asarray(partial_corr, dtype=float)
    p = rho.shape[0]
    if n < p + 2:
        raise InsufficientSampleError(
            f"edge tests require n >= p + 2 observations (got n={n}, p={p})"
        )
    if df_rule not in DF_RULES:
        raise ValueError(f"unknown df rule {df_rule!r}; expected one of {DF_RULES}")
    df = n - p if df_rule == "n-p" else n - p - 2
    if df < 1:
        raise InsufficientSampleError(
            f"df rule {df_rule!r} leaves {df} degrees of freedom at n={n}, p={p}"
        )
    r = rho[np.triu_indices(p, k=1)]
    pvals = np.zeros(r.shape, dtype=float)
    saturated = np.abs(r) >= 1.0 - UNIT_CORR_TOL
    open_r = r[~saturated]
    t = open_r * np.sqrt(df) / np.sqrt(1.0 - open_r**2)
    pvals[~saturated] = student_t_two_sided(t, df)
    return pvals


def edges_from_concentration(concentration, tol: float = 1e-12) -> frozenset[tuple[int, int]]:
    """Edge set encoded by a concentration matrix: pair (i, j) is an edge
    iff |K_ij| > tol."""
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    conc = np.asarray(concentration, dtype=float)
    p = conc.shape[0]
    values = conc[np.triu_indices(p, k=1)]
    pairs = edge_pairs(p)
    return frozenset(pairs[k] for k in np.flatnonzero(np.abs(values) > tol))
