"""Tests for model generation, positive-definite repair, sampling, and the
model file format."""

import json

import numpy as np
import pytest

from ggmtest.datasets import SEVEN_NODE_EDGES, seven_node_model
from ggmtest.edges import edge_pairs
from ggmtest.errors import GenerationError, GgmError
from ggmtest.modelgen import (
    DELTA_STEP,
    MIN_EIGENVALUE,
    GeneratorSpec,
    generate_model,
    load_model,
    model_from_concentration,
    repair_positive_definite,
    sample_mvn,
    save_model,
)


def oracle_min_eigenvalue(matrix, iters=100):
    """Smallest eigenvalue via bisection on Cholesky feasibility of A - tI.

    Independent of eigvalsh: A - tI admits a Cholesky factorisation exactly
    when t is below the smallest eigenvalue.
    """
    mat = np.asarray(matrix, dtype=float)
    eye = np.eye(mat.shape[0])

    def shifted_is_pd(t):
        try:
            np.linalg.cholesky(mat - t * eye)
            return True
        except np.linalg.LinAlgError:
            return False

    lo, hi = -float(np.trace(mat)) - 1.0, float(np.trace(mat)) + 1.0
    assert shifted_is_pd(lo) and not shifted_is_pd(hi)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if shifted_is_pd(mid):
            lo = mid
        else:
            hi = mid
    return lo


# ---------------------------------------------------------------------------
# GeneratorSpec


def test_spec_requires_exactly_one_sparsity_parameter():
    with pytest.raises(ValueError, match="exactly one"):
        GeneratorSpec(p=5)
    with pytest.raises(ValueError, match="exactly one"):
        GeneratorSpec(p=5, m=3, q=0.5)


def test_spec_rejects_tiny_graphs():
    with pytest.raises(ValueError, match="at least 2"):
        GeneratorSpec(p=1, m=0)


def test_spec_edge_count_bounds():
    GeneratorSpec(p=5, m=10)  # C(5, 2) exactly is fine
    with pytest.raises(ValueError, match="edge count"):
        GeneratorSpec(p=5, m=11)
    with pytest.raises(ValueError, match="edge count"):
        GeneratorSpec(p=5, m=-1)


def test_spec_density_bounds():
    with pytest.raises(ValueError, match="density"):
        GeneratorSpec(p=5, q=1.2)
    with pytest.raises(ValueError, match="density"):
        GeneratorSpec(p=5, q=-0.1)


def test_spec_magnitude_bounds():
    with pytest.raises(ValueError, match="rho"):
        GeneratorSpec(p=5, m=2, rho_min=0.0)
    with pytest.raises(ValueError, match="rho"):
        GeneratorSpec(p=5, m=2, rho_min=0.6, rho_max=0.5)
    with pytest.raises(ValueError, match="rho"):
        GeneratorSpec(p=5, m=2, rho_max=1.0)


def test_spec_seed_bounds():
    GeneratorSpec(p=5, m=2, seed=2**64 - 1)
    with pytest.raises(ValueError, match="seed"):
        GeneratorSpec(p=5, m=2, seed=-1)
    with pytest.raises(ValueError, match="seed"):
        GeneratorSpec(p=5, m=2, seed=2**64)


def test_density_converts_round_half_up():
    assert GeneratorSpec(p=25, q=0.6).edge_count == 180
    assert GeneratorSpec(p=25, q=0.2).edge_count == 60
    # 0.5 * C(3, 2) = 1.5 sits exactly on the boundary and rounds up
    assert GeneratorSpec(p=3, q=0.5).edge_count == 2
    assert GeneratorSpec(p=4, q=0.0).edge_count == 0
    assert GeneratorSpec(p=4, q=1.0).edge_count == 6


def test_explicit_edge_count_passes_through():
    assert GeneratorSpec(p=10, m=7).edge_count == 7


# ---------------------------------------------------------------------------
# positive-definite repair


def test_repair_leaves_pd_matrix_untouched():
    mat = np.array([[1.0, 0.9], [0.9, 1.0]])
    out, delta = repair_positive_definite(mat)
    assert delta == 0.0
    assert np.array_equal(out, mat)


def test_repair_shrinks_indefinite_matrix():
    # all off-diagonals -0.9: eigenvalues 1.9, 1.9, -0.8, so the first
    # delta with (-0.8 + delta) / (1 + delta) >= 1e-6 is 0.85
    mat = np.full((3, 3), -0.9)
    np.fill_diagonal(mat, 1.0)
    out, delta = repair_positive_definite(mat)
    assert delta == pytest.approx(0.85, abs=1e-12)
    assert np.allclose(np.diag(out), 1.0, rtol=0, atol=0)
    assert np.allclose(out, out.T, rtol=0, atol=0)
    assert np.linalg.eigvalsh(out)[0] >= MIN_EIGENVALUE
    # off-diagonal magnitudes shrink by exactly 1 / (1 + delta)
    assert out[0, 1] == pytest.approx(-0.9 / (1.0 + delta), rel=1e-15)


def test_repair_gives_up_past_schedule_end():
    mat = np.array([[1.0, 6.1], [6.1, 1.0]])
    with pytest.raises(GenerationError, match="positive definiteness"):
        repair_positive_definite(mat)


def test_repair_preserves_zero_pattern_exactly():
    mat = np.full((4, 4), -0.8)
    np.fill_diagonal(mat, 1.0)
    mat[0, 2] = mat[2, 0] = 0.0
    mat[1, 3] = mat[3, 1] = 0.0
    out, delta = repair_positive_definite(mat)
    assert delta > 0.0
    assert out[0, 2] == 0.0 and out[2, 0] == 0.0
    assert out[1, 3] == 0.0 and out[3, 1] == 0.0
    assert np.array_equal(np.diag(out), np.ones(4))


def test_repair_validates_input():
    with pytest.raises(ValueError, match="symmetric"):
        repair_positive_definite(np.array([[1.0, 0.2], [0.3, 1.0]]))
    with pytest.raises(ValueError, match="unit diagonal"):
        repair_positive_definite(np.array([[2.0, 0.2], [0.2, 2.0]]))


# ---------------------------------------------------------------------------
# generate_model


def test_generate_edgeless_model_is_identity():
    model = generate_model(GeneratorSpec(p=6, m=0, seed=4))
    assert np.array_equal(model.concentration, np.eye(6))
    assert np.array_equal(model.covariance, np.eye(6))
    assert model.edges == frozenset()
    assert not model.repaired and model.delta == 0.0


def test_generate_model_edge_count_and_symmetry():
    spec = GeneratorSpec(p=12, m=20, seed=1)
    model = generate_model(spec)
    assert len(model.edges) == 20
    conc = model.concentration
    assert np.array_equal(conc, conc.T)
    assert np.array_equal(np.diag(conc), np.ones(12))
    assert model.p == 12
    # edge list and matrix pattern agree
    for i, j in edge_pairs(12):
        value = conc[i - 1, j - 1]
        assert ((i, j) in model.edges) == (abs(value) > 1e-12)


def test_generate_model_is_deterministic():
    spec = GeneratorSpec(p=10, m=15, seed=42)
    a = generate_model(spec)
    b = generate_model(spec)
    assert np.array_equal(a.concentration, b.concentration)
    assert np.array_equal(a.covariance, b.covariance)
    assert a.edges == b.edges


def test_generate_model_seed_changes_edges():
    spec_a = GeneratorSpec(p=10, m=10, seed=0)
    spec_b = GeneratorSpec(p=10, m=10, seed=1)
    assert generate_model(spec_a).edges != generate_model(spec_b).edges


def test_generated_magnitudes_respect_shrunk_bounds():
    spec = GeneratorSpec(p=25, q=0.95, rho_min=0.4, rho_max=0.55, seed=3)
    model = generate_model(spec)
    assert model.repaired
    assert model.delta == pytest.approx(0.5, abs=1e-12)
    scale = 1.0 + model.delta
    values = [model.concentration[i - 1, j - 1] for i, j in model.edges]
    assert all(0.4 / scale - 1e-12 <= v <= 0.55 / scale + 1e-12 for v in values)
    assert len(model.edges) == 285  # 0.95 * C(25, 2)


def test_repair_uses_smallest_sufficient_delta():
    spec = GeneratorSpec(p=25, q=0.95, rho_min=0.4, rho_max=0.55, seed=3)
    model = generate_model(spec)
    conc = model.concentration
    # check the eigenvalue floor against the bisection oracle
    assert oracle_min_eigenvalue(conc) >= MIN_EIGENVALUE - 1e-12
    # reconstruct the raw matrix and confirm the previous step fails
    raw = conc * (1.0 + model.delta) - model.delta * np.eye(model.p)
    prev = model.delta - DELTA_STEP
    candidate = (raw + prev * np.eye(model.p)) / (1.0 + prev)
    assert oracle_min_eigenvalue(candidate) < MIN_EIGENVALUE


def test_random_sign_produces_both_signs():
    spec = GeneratorSpec(p=10, m=20, rho_min=0.3, rho_max=0.5, seed=2,
                         random_sign=True)
    model = generate_model(spec)
    values = np.array([model.concentration[i - 1, j - 1] for i, j in model.edges])
    assert values.min() < 0.0 < values.max()
    assert np.all((np.abs(values) >= 0.3 / (1 + model.delta) - 1e-12)
                  & (np.abs(values) <= 0.5 / (1 + model.delta) + 1e-12))


def test_generate_model_can_exhaust_repair():
    spec = GeneratorSpec(p=25, q=1.0, rho_min=0.96, rho_max=0.97,
                         random_sign=True, seed=0)
    with pytest.raises(GenerationError):
        generate_model(spec)


def test_covariance_inverts_concentration():
    model = generate_model(GeneratorSpec(p=8, m=10, seed=6))
    product = model.concentration @ model.covariance
    assert np.allclose(product, np.eye(8), rtol=0, atol=1e-10)


def test_model_from_concentration_seven_node():
    model = seven_node_model()
    assert model.edges == frozenset(SEVEN_NODE_EDGES)
    assert model.p == 7
    assert not model.repaired
    assert np.allclose(model.concentration @ model.covariance, np.eye(7),
                       rtol=0, atol=1e-10)


def test_model_from_concentration_rejects_asymmetry():
    bad = np.eye(3)
    bad[0, 1] = 0.5
    with pytest.raises(ValueError, match="symmetric"):
        model_from_concentration(bad)


def test_model_from_concentration_rejects_indefinite():
    bad = np.array([[1.0, 2.0], [2.0, 1.0]])
    with pytest.raises(ValueError):
        model_from_concentration(bad)


# ---------------------------------------------------------------------------
# sampling


def test_sample_shape_and_determinism():
    cov = np.eye(3)
    x = sample_mvn(cov, 5, 123)
    assert x.shape == (5, 3)
    assert np.array_equal(x, sample_mvn(cov, 5, 123))
    assert not np.array_equal(x, sample_mvn(cov, 5, 124))


def test_sample_single_row():
    x = sample_mvn(np.eye(4), 1, 0)
    assert x.shape == (1, 4)


def test_sample_rejects_empty_and_indefinite():
    with pytest.raises(ValueError, match="one observation"):
        sample_mvn(np.eye(2), 0, 0)
    with pytest.raises(ValueError, match="positive definite"):
        sample_mvn(np.array([[1.0, 2.0], [2.0, 1.0]]), 10, 0)


def test_sample_moments_match_identity_covariance():
    x = sample_mvn(np.eye(4), 10000, 5)
    assert np.all(np.abs(x.mean(axis=0)) < 0.05)
    v = x.var(axis=0, ddof=1)
    assert np.all((v > 0.94) & (v < 1.06))


def test_sample_reproduces_correlation():
    cov = np.array([[1.0, 0.8], [0.8, 1.0]])
    x = sample_mvn(cov, 40000, 9)
    emp = np.cov(x, rowvar=False)
    corr = emp[0, 1] / np.sqrt(emp[0, 0] * emp[1, 1])
    assert corr == pytest.approx(0.8, abs=0.01)
    assert emp[0, 0] == pytest.approx(1.0, abs=0.03)
    assert emp[1, 1] == pytest.approx(1.0, abs=0.03)


# ---------------------------------------------------------------------------
# save / load


def test_save_load_round_trip(tmp_path):
    spec = GeneratorSpec(p=9, m=12, rho_min=0.25, rho_max=0.5, seed=77)
    model = generate_model(spec)
    path = tmp_path / "model.json"
    save_model(model, path)
    loaded = load_model(path)
    # json floats round-trip exactly, so the matrices must be identical
    assert np.array_equal(loaded.concentration, model.concentration)
    assert loaded.edges == model.edges
    assert loaded.spec == spec
    assert loaded.repaired == model.repaired
    assert loaded.delta == model.delta


def test_save_load_without_spec(tmp_path):
    model = seven_node_model()
    path = tmp_path / "seven.json"
    save_model(model, path)
    payload = json.loads(path.read_text())
    assert payload["spec"] is None
    assert payload["p"] == 7
    assert len(payload["edges"]) == 9
    # indices are 1-based and each row carries the matrix entry
    for i, j, value in payload["edges"]:
        assert 1 <= i < j <= 7
        assert value == payload["matrix"][i - 1][j - 1]
    loaded = load_model(path)
    assert loaded.spec is None
    assert loaded.edges == model.edges


def test_load_missing_file():
    with pytest.raises(GgmError, match="cannot read"):
        load_model("/nonexistent/model.json")


def test_load_invalid_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(GgmError, match="not valid JSON"):
        load_model(path)


def test_load_missing_key(tmp_path):
    path = tmp_path / "partial.json"
    path.write_text(json.dumps({"p": 3, "matrix": np.eye(3).tolist()}))
    with pytest.raises(GgmError, match="required key"):
        load_model(path)


def test_load_shape_mismatch(tmp_path):
    path = tmp_path / "shape.json"
    path.write_text(json.dumps({"p": 4, "matrix": np.eye(3).tolist(),
                                "edges": []}))
    with pytest.raises(GgmError, match="not 4x4"):
        load_model(path)


def test_load_asymmetric_matrix(tmp_path):
    mat = np.eye(3)
    mat[0, 1] = 0.4
    path = tmp_path / "asym.json"
    path.write_text(json.dumps({"p": 3, "matrix": mat.tolist(), "edges": []}))
    with pytest.raises(GgmError, match="not symmetric"):
        load_model(path)


def test_load_indefinite_matrix(tmp_path):
    mat = [[1.0, 2.0], [2.0, 1.0]]
    path = tmp_path / "indef.json"
    path.write_text(json.dumps({"p": 2, "matrix": mat,
                                "edges": [[1, 2, 2.0]]}))
    with pytest.raises(GgmError):
        load_model(path)


def test_load_edge_list_mismatch(tmp_path):
    mat = np.eye(3)
    mat[0, 1] = mat[1, 0] = 0.4
    path = tmp_path / "edges.json"
    path.write_text(json.dumps({"p": 3, "matrix": mat.tolist(),
                                "edges": [[2, 3, 0.4]]}))
    with pytest.raises(GgmError, match="edge list"):
        load_model(path)


def test_load_bad_spec_block(tmp_path):
    mat = np.eye(2).tolist()
    path = tmp_path / "spec.json"
    path.write_text(json.dumps({"p": 2, "matrix": mat, "edges": [],
                                "spec": {"p": 2, "m": 0, "q": 0.5}}))
    with pytest.raises(GgmError, match="generator block"):
        load_model(path)
