"""HodgeRank and its characterization as the l2 projection onto strongly transitive matrices."""
import math

import numpy as np

from perronrank.core.comparison import log_map, rank_one_of, score_differences
from perronrank.models.comparison import AdditiveMatrix, AdditiveScore, PositiveMatrix
from perronrank.services.hodge_rank import hodge_score_additive, hodge_score_multiplicative, l2_project_to_st
from tests.conftest import skew_matrix


def test_hodge_multiplicative_examples(rng):
    assert np.allclose(hodge_score_multiplicative(PositiveMatrix(entries=np.ones((4, 4)))).entries, 1.0)
    pair = hodge_score_multiplicative(PositiveMatrix(entries=[[1, 2], [0.5, 1]]))
    assert np.allclose(pair.entries, [math.sqrt(2), 1 / math.sqrt(2)], rtol=1e-15)

    s = AdditiveScore.centered(rng.standard_normal(5))
    X, _ = rank_one_of(s)
    assert np.allclose(hodge_score_multiplicative(X).entries, np.exp(s.entries), rtol=1e-13)


def test_hodge_additive_examples(rng):
    assert np.array_equal(hodge_score_additive(AdditiveMatrix(entries=np.zeros((3, 3)))).entries, np.zeros(3))
    a = 2.2
    assert np.allclose(hodge_score_additive(AdditiveMatrix(entries=[[0, a], [-a, 0]])).entries, [a / 2, -a / 2])

    X = PositiveMatrix(entries=rng.uniform(0.1, 5.0, size=(5, 5)))
    additive = hodge_score_additive(log_map(X)).entries
    assert np.allclose(additive, np.log(hodge_score_multiplicative(X).entries), atol=1e-14)


def test_hodge_equivariance_and_scale(rng):
    A = rng.standard_normal((6, 6))
    s = AdditiveScore.centered(rng.standard_normal(6))
    base = hodge_score_additive(AdditiveMatrix(entries=A)).entries
    moved = hodge_score_additive(AdditiveMatrix(entries=A + score_differences(s.entries))).entries
    assert np.allclose(moved, base + s.entries, atol=1e-14)
    for c in (-3.0, 0.5, 10.0):
        assert np.allclose(hodge_score_additive(AdditiveMatrix(entries=c * A)).entries, c * base, atol=1e-13)


def test_projection_of_strongly_transitive_input(rng):
    s = AdditiveScore.centered(rng.standard_normal(5))
    _, A = rank_one_of(s)
    projected, residual = l2_project_to_st(A)
    assert np.allclose(projected.entries, s.entries, atol=1e-12)
    assert np.max(np.abs(residual.entries)) <= 1e-12


def test_projection_of_pure_cycle():
    cycle = AdditiveMatrix(entries=[[0, 1, -1], [-1, 0, 1], [1, -1, 0]], skew=True)
    projected, residual = l2_project_to_st(cycle)
    assert np.allclose(projected.entries, 0.0)
    assert np.allclose(residual.entries, cycle.entries)
    assert residual.skew


def test_projection_equals_hodge_on_skew_input(rng):
    A = AdditiveMatrix(entries=skew_matrix(rng, 6), skew=True)
    projected, _ = l2_project_to_st(A)
    assert np.allclose(projected.entries, hodge_score_additive(A).entries, atol=1e-14)


def test_residual_is_orthogonal_to_strongly_transitive_directions(rng):
    A = AdditiveMatrix(entries=skew_matrix(rng, 6), skew=True)
    _, residual = l2_project_to_st(A)
    for _ in range(20):
        direction = score_differences(rng.standard_normal(6))
        assert abs(np.sum(residual.entries * direction)) <= 1e-10


def test_projection_beats_random_perturbations(rng):
    """Local optimality check on 100 random skew instances."""
    for trial in range(100):
        n = 3 + trial % 5
        A = skew_matrix(rng, n)
        s, _ = l2_project_to_st(AdditiveMatrix(entries=A, skew=True))
        best = np.linalg.norm(A - score_differences(s.entries))
        for _ in range(20):
            delta = rng.standard_normal(n)
            delta = 1e-2 * (delta - delta.mean())
            perturbed = np.linalg.norm(A - score_differences(s.entries + delta))
            assert perturbed > best


def test_projection_of_general_matrix_solves_normal_equations(rng):
    A = rng.standard_normal((5, 5))
    s, residual = l2_project_to_st(AdditiveMatrix(entries=A))
    # gradient of ||A - [s_i - s_j]||_F^2 vanishes on the sum-zero subspace
    gradient = -2 * (residual.entries.sum(axis=1) - residual.entries.sum(axis=0))
    assert np.allclose(gradient - gradient.mean(), 0.0, atol=1e-12)
