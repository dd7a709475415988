"""Max-plus eigentheory: Karp, Kleene star, critical nodes and uniqueness."""
import math

import numpy as np
import pytest

from perronrank.core.comparison import rank_one_of
from perronrank.core.exceptions import NonUniqueTropicalException, PositiveCycleException
from perronrank.models.comparison import AdditiveMatrix, AdditiveScore, KParameter, PositiveMatrix
from perronrank.services.perron_engine import perron_engine
from perronrank.services.tropical_rank import (
    kleene_star, max_cycle_mean, max_plus_product, tropical_eigen, tropical_score, tropical_score_additive,
)
from tests.conftest import skew_matrix
from tests.oracles import max_cycle_mean_oracle, max_plus_apply

DISJOINT_LOOPS = [[0.0, -5.0, -5.0], [-5.0, 0.0, -5.0], [-5.0, -5.0, -5.0]]


def test_max_cycle_mean_examples():
    assert max_cycle_mean(AdditiveMatrix(entries=np.zeros((4, 4)))) == 0.0
    a = 3.0
    assert max_cycle_mean(AdditiveMatrix(entries=[[-5, a], [-a, -5]])) == pytest.approx(0.0, abs=1e-15)


def test_max_cycle_mean_matches_cycle_enumeration(rng):
    """200 random matrices with n <= 6."""
    for trial in range(200):
        n = 2 + trial % 5
        A = rng.standard_normal((n, n))
        assert max_cycle_mean(AdditiveMatrix(entries=A)) == pytest.approx(max_cycle_mean_oracle(A), abs=1e-12)


def test_max_cycle_mean_shifts_with_constant(rng):
    A = rng.standard_normal((5, 5))
    base = max_cycle_mean(AdditiveMatrix(entries=A))
    assert max_cycle_mean(AdditiveMatrix(entries=A + 1.75)) == pytest.approx(base + 1.75, abs=1e-12)


def test_kleene_star_examples(rng):
    star = kleene_star(AdditiveMatrix(entries=[[-1.0, 0.0], [0.0, -1.0]]))
    assert np.array_equal(star.entries, np.zeros((2, 2)))

    B = rng.standard_normal((5, 5))
    B = B - max_cycle_mean(AdditiveMatrix(entries=B))
    star = kleene_star(AdditiveMatrix(entries=B)).entries
    assert np.allclose(np.diag(star), 0.0, atol=1e-12)
    assert np.allclose(max_plus_product(star, star), star, atol=1e-12)

    with pytest.raises(PositiveCycleException):
        kleene_star(AdditiveMatrix(entries=[[0.5, 0.0], [0.0, -1.0]]))


def test_tropical_eigen_of_strongly_transitive_input(rng):
    s = AdditiveScore.centered(rng.standard_normal(5))
    _, A = rank_one_of(s)
    data = tropical_eigen(A)
    assert data.unique
    assert data.eigenvalue == pytest.approx(0.0, abs=1e-12)
    assert np.allclose(data.eigenvector.entries, s.entries, atol=1e-12)


def test_tropical_eigen_two_by_two():
    a = math.log(4.0)
    data = tropical_eigen(AdditiveMatrix(entries=[[0, a], [-a, 0]]))
    assert data.unique
    assert data.eigenvalue == pytest.approx(0.0, abs=1e-15)
    assert np.allclose(data.eigenvector.entries, [a / 2, -a / 2])


def test_disjoint_critical_loops_are_not_unique():
    A = AdditiveMatrix(entries=DISJOINT_LOOPS)
    data = tropical_eigen(A)
    assert not data.unique
    assert data.eigenvector is None
    assert data.critical_nodes == [0, 1]
    assert len(data.basis) == 2
    for vector in data.basis:
        assert np.allclose(max_plus_apply(A.entries, vector.entries), data.eigenvalue + vector.entries, atol=1e-9)

    with pytest.raises(NonUniqueTropicalException) as info:
        tropical_score_additive(A)
    assert len(info.value.eigen_data.basis) == 2
    assert info.value.details["unique"] is False
    with pytest.raises(NonUniqueTropicalException):
        tropical_score(PositiveMatrix(entries=np.exp(DISJOINT_LOOPS)))
    with pytest.raises(NonUniqueTropicalException):
        perron_engine.perron_family_score(A, KParameter.infinity())


def test_tropical_score_multiplicative():
    score = tropical_score(PositiveMatrix(entries=[[1, 4], [0.25, 1]]))
    assert np.allclose(score.entries, [2, 0.5], rtol=1e-14)

    s = AdditiveScore(entries=[0.4, -0.1, -0.3])
    X, _ = rank_one_of(s)
    assert np.allclose(tropical_score(X).entries, np.exp(s.entries), rtol=1e-12)


def test_basis_vectors_satisfy_eigen_equation(rng):
    for trial in range(50):
        n = 2 + trial % 6
        A = rng.standard_normal((n, n))
        data = tropical_eigen(AdditiveMatrix(entries=A))
        assert data.unique == (len(data.basis) == 1)
        for vector in data.basis:
            lhs = max_plus_apply(A, vector.entries)
            assert np.allclose(lhs, data.eigenvalue + vector.entries, atol=1e-9)


def test_perron_family_converges_to_tropical_rank(rng):
    """Large-k limit on 50 random reciprocal 5x5 matrices with a unique tropical eigenvector."""
    checked = 0
    while checked < 50:
        A = AdditiveMatrix(entries=skew_matrix(rng, 5), skew=True)
        data = tropical_eigen(A)
        if not data.unique:
            continue
        errors = [
            np.max(np.abs(perron_engine.log_perron_score(A, k).score.entries - data.eigenvector.entries))
            for k in (10.0, 30.0, 100.0, 300.0)
        ]
        assert all(later <= earlier + 1e-9 for earlier, later in zip(errors, errors[1:]))
        assert errors[-1] <= 0.05
        checked += 1
