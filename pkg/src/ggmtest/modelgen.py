"""Ground-truth models: random sparse concentration matrices and
multivariate normal sampling.

A model is a symmetric positive-definite concentration matrix with unit
diagonal whose nonzero off-diagonal pattern is the true edge set.  All
randomness flows through numpy's PCG64 generator, so a fixed seed
reproduces bit-identical models and samples.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .edges import mask_from_edges, n_pairs
from .errors import GenerationError, GgmError
from .stats import edges_from_concentration, spd_inverse

#: smallest acceptable eigenvalue after repair
MIN_EIGENVALUE = 1e-6

#: repair schedule: delta = k * DELTA_STEP for k = 0, 1, ... up to MAX_DELTA
DELTA_STEP = 0.05
MAX_DELTA = 5.0

#: entries at or below this magnitude count as structural zeros
ZERO_TOL = 1e-12

_SEED_LIMIT = 1 << 64


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters of a random sparse concentration matrix.

    Exactly one of ``m`` (edge count) and ``q`` (edge density) must be set;
    a density is converted with round-half-up.  Nonzero magnitudes are drawn
    uniformly from [rho_min, rho_max] and are positive unless
    ``random_sign`` is set.
    """

    p: int
    m: int | None = None
    q: float | None = None
    rho_min: float = 0.2
    rho_max: float = 0.55
    seed: int = 0
    random_sign: bool = False

    def __post_init__(self):
        if self.p < 2:
            raise ValueError("p must be at least 2")
        if (self.m is None) == (self.q is None):
            raise ValueError("exactly one of edge count m and density q must be given")
        if self.m is not None and not 0 <= self.m <= n_pairs(self.p):
            raise ValueError(f"edge count must lie in [0, {n_pairs(self.p)}]")
        if self.q is not None and not 0.0 <= self.q <= 1.0:
            raise ValueError("density must lie in [0, 1]")
        if not 0.0 < self.rho_min <= self.rho_max < 1.0:
            raise ValueError("need 0 < rho_min <= rho_max < 1")
        if not 0 <= self.seed < _SEED_LIMIT:
            raise ValueError("seed must be an unsigned 64-bit integer")

    @property
    def edge_count(self) -> int:
        if self.m is not None:
            return self.m
        return int(math.floor(self.q * n_pairs(self.p) + 0.5))


@dataclass(frozen=True, eq=False)
class TrueModel:
    """A ground-truth model: concentration matrix, its inverse, and the
    edge set it encodes.  The mean is fixed to zero."""

    concentration: np.ndarray
    covariance: np.ndarray
    edges: frozenset[tuple[int, int]]
    mean: np.ndarray
    spec: GeneratorSpec | None
    repaired: bool
    delta: float

    @property
    def p(self) -> int:
        return self.concentration.shape[0]

    def edge_mask(self) -> np.ndarray:
        """True edges as a boolean vector over the canonical pair order."""
        return mask_from_edges(self.edges, self.p)


def covariance_from_concentration(concentration) -> np.ndarray:
    """Invert a concentration matrix back to covariance form."""
    conc = np.asarray(concentration, dtype=float)
    return spd_inverse(conc, ValueError, "concentration matrix")


def repair_positive_definite(matrix, min_eigenvalue: float = MIN_EIGENVALUE) -> tuple[np.ndarray, float]:
    """Shrink a symmetric unit-diagonal matrix toward the identity until it
    is positive definite.

    Tries K' = (K + delta*I) / (1 + delta) for delta = 0, 0.05, 0.10, ...
    and returns the first K' whose smallest eigenvalue reaches
    ``min_eigenvalue``, together with the delta used.  The zero pattern and
    the unit diagonal are preserved exactly; nonzero magnitudes shrink by
    1 / (1 + delta).

    Raises :class:`GenerationError` once delta would exceed ``MAX_DELTA``.
    """
    mat = np.asarray(matrix, dtype=float)
    p = mat.shape[0]
    if not np.allclose(mat, mat.T, rtol=0, atol=1e-12):
        raise ValueError("repair requires a symmetric matrix")
    if not np.allclose(np.diag(mat), 1.0, rtol=0, atol=1e-12):
        raise ValueError("repair requires a unit diagonal")
    steps = int(round(MAX_DELTA / DELTA_STEP))
    eye = np.eye(p)
    for k in range(steps + 1):
        delta = k * DELTA_STEP
        candidate = (mat + delta * eye) / (1.0 + delta)
        if np.linalg.eigvalsh(candidate)[0] >= min_eigenvalue:
            return candidate, delta
    raise GenerationError(
        f"could not reach positive definiteness with delta up to {MAX_DELTA}"
    )


def generate_model(spec: GeneratorSpec) -> TrueModel:
    """Draw a random sparse concentration matrix and package it as a model.

    The edge subset is chosen uniformly without replacement among all
    vertex pairs; magnitudes are uniform on [rho_min, rho_max].  If the raw
    matrix is not positive definite it is repaired by shrinking toward the
    identity, which keeps the edge pattern intact.
    """
    p = spec.p
    total = n_pairs(p)
    m = spec.edge_count
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    upper = np.zeros(total)
    if m > 0:
        chosen = rng.choice(total, size=m, replace=False)
        magnitudes = rng.uniform(spec.rho_min, spec.rho_max, size=m)
        if spec.random_sign:
            magnitudes = magnitudes * rng.choice([-1.0, 1.0], size=m)
        upper[chosen] = magnitudes
    strict = np.zeros((p, p))
    strict[np.triu_indices(p, k=1)] = upper
    raw = np.eye(p) + strict + strict.T

    repaired_matrix, delta = repair_positive_definite(raw)
    edges = edges_from_concentration(repaired_matrix, ZERO_TOL)
    if len(edges) != m:
        raise GenerationError("repair changed the edge pattern; this is a bug")
    return TrueModel(
        concentration=repaired_matrix,
        covariance=covariance_from_concentration(repaired_matrix),
        edges=edges,
        mean=np.zeros(p),
        spec=spec,
        repaired=delta > 0.0,
        delta=delta,
    )


def model_from_concentration(concentration, spec: GeneratorSpec | None = None) -> TrueModel:
    """Wrap an explicit positive-definite concentration matrix as a model."""
    conc = np.asarray(concentration, dtype=float)
    if not np.allclose(conc, conc.T, rtol=1e-12, atol=1e-12):
        raise ValueError("concentration matrix must be symmetric")
    conc = (conc + conc.T) / 2.0
    return TrueModel(
        concentration=conc,
        covariance=covariance_from_concentration(conc),
        edges=edges_from_concentration(conc, ZERO_TOL),
        mean=np.zeros(conc.shape[0]),
        spec=spec,
        repaired=False,
        delta=0.0,
    )


def sample_mvn(covariance, n: int, seed: int) -> np.ndarray:
    """Draw n i.i.d. rows from N(0, covariance).

    Rows are L @ z with L the lower Cholesky factor of the covariance and z
    standard normal from PCG64(seed), so a fixed (covariance, n, seed)
    triple reproduces the exact same matrix.
    """
    if n < 1:
        raise ValueError("need at least one observation")
    cov = np.asarray(covariance, dtype=float)
    try:
        lower = np.linalg.cholesky(cov)
    except np.linalg.LinAlgError:
        raise ValueError("covariance matrix is not positive definite") from None
    rng = np.random.Generator(np.random.PCG64(seed))
    z = rng.standard_normal((n, cov.shape[0]))
    return z @ lower.T


def save_model(model: TrueModel, path) -> None:
    """Write a model to a JSON document (see README for the schema)."""
    spec = model.spec
    spec_payload = None
    if spec is not None:
        spec_payload = {
            "p": spec.p,
            "m": spec.m,
            "q": spec.q,
            "rho_min": spec.rho_min,
            "rho_max": spec.rho_max,
            "seed": spec.seed,
            "random_sign": spec.random_sign,
        }
    conc = model.concentration
    payload = {
        "p": model.p,
        "seed": spec.seed if spec is not None else 0,
        "spec": spec_payload,
        "repaired": model.repaired,
        "delta": model.delta,
        "matrix": [[float(v) for v in row] for row in conc],
        "edges": [
            [i, j, float(conc[i - 1, j - 1])] for i, j in sorted(model.edges)
        ],
    }
    text = json.dumps(payload, indent=2, sort_keys=True)
    Path(path).write_text(text + "\n", encoding="utf-8")


def load_model(path) -> TrueModel:
    """Read a model JSON document back into a :class:`TrueModel`.

    Raises :class:`GgmError` on unreadable or inconsistent files.
    """
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise GgmError(f"cannot read model file {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise GgmError(f"model file {path} is not valid JSON: {exc}") from None
    for key in ("p", "matrix", "edges"):
        if key not in payload:
            raise GgmError(f"model file {path} lacks required key {key!r}")
    p = payload["p"]
    matrix = np.asarray(payload["matrix"], dtype=float)
    if matrix.shape != (p, p):
        raise GgmError(f"model file {path}: matrix is not {p}x{p}")
    if not np.allclose(matrix, matrix.T, rtol=1e-9, atol=1e-12):
        raise GgmError(f"model file {path}: matrix is not symmetric")
    matrix = (matrix + matrix.T) / 2.0
    try:
        covariance = covariance_from_concentration(matrix)
    except ValueError as exc:
        raise GgmError(f"model file {path}: {exc}") from None
    edges = edges_from_concentration(matrix, ZERO_TOL)
    listed = frozenset((int(i), int(j)) for i, j, _ in payload["edges"])
    if listed != edges:
        raise GgmError(
            f"model file {path}: edge list does not match the matrix pattern"
        )
    spec = None
    if payload.get("spec") is not None:
        try:
            spec = GeneratorSpec(**payload["spec"])
        except (TypeError, ValueError) as exc:
            raise GgmError(f"model file {path}: bad generator block: {exc}") from None
    return TrueModel(
        concentration=matrix,
        covariance=covariance,
        edges=edges,
        mean=np.zeros(p),
        spec=spec,
        repaired=bool(payload.get("repaired", False)),
        delta=float(payload.get("delta", 0.0)),
    )
