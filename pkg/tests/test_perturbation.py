"""Perturbation reports, the epsilon bound and its Monte-Carlo verification."""
import math

import numpy as np
import pytest

from perronrank.core.comparison import rank_one_of
from perronrank.core.exceptions import DegenerateDenominatorException, NotApplicableException
from perronrank.models.comparison import AdditiveScore, PositiveMatrix, ProjectiveScore
from perronrank.models.solver import SolverConfig
from perronrank.services.perturbation import perturbation_analyzer, rho_from_norm, spectral_norm
from tests.conftest import skew_matrix
from tests.oracles import spectral_norm_oracle


def test_spectral_norm_examples(rng):
    assert spectral_norm(np.zeros((3, 3))) == 0.0
    assert spectral_norm(np.diag([3.0, -5.0])) == pytest.approx(5.0, rel=1e-12)
    cycle = np.array([[0, 1, -1], [-1, 0, 1], [1, -1, 0]], dtype=float)
    assert spectral_norm(cycle) == pytest.approx(math.sqrt(3.0), rel=1e-12)
    for _ in range(20):
        M = rng.standard_normal((4, 4))
        assert spectral_norm(M) == pytest.approx(spectral_norm_oracle(M), rel=1e-8)


def test_rho_from_norm():
    assert rho_from_norm(0.0, 5, 1.0) == 0.0
    assert rho_from_norm(5 / 4, 5, 1.0) == pytest.approx(1.0)
    assert math.isinf(rho_from_norm(3.0, 5, 1.0))


def test_report_of_unperturbed_input(rng):
    s = AdditiveScore.centered(rng.standard_normal(5))
    X, _ = rank_one_of(s)
    w = s.to_projective()
    report = perturbation_analyzer.build_report(X, w, 1.0)
    assert report.norm_Xi <= 1e-13
    assert report.rho <= 1e-24
    assert report.applicable
    assert np.allclose(report.linear_estimate, w.entries, rtol=1e-13)
    assert report.epsilon_bound <= 1e-12

    check = perturbation_analyzer.verify_epsilon_bound(X, w, 1.0)
    assert check.passed
    assert check.observed_epsilon_norm <= 1e-14
    assert check.slack >= 1e-14


def test_report_of_kappa_base_case():
    n, kappa = 4, 2.5
    X = PositiveMatrix(entries=kappa * np.ones((n, n)) + (1 - kappa) * np.eye(n))
    report = perturbation_analyzer.build_report(X, ProjectiveScore(entries=np.ones(n)), kappa)
    assert np.array_equal(report.Xi, np.zeros((n, n)))
    assert report.rho == 0.0
    assert np.allclose(report.linear_estimate, 1.0)


def test_report_at_the_applicability_boundary():
    """||Xi|| = n kappa / 4 gives rho = 1."""
    n = 4
    X = PositiveMatrix(entries=np.ones((n, n)) + np.eye(n))
    report = perturbation_analyzer.build_report(X, ProjectiveScore(entries=np.ones(n)), 1.0)
    assert report.norm_Xi == pytest.approx(1.0)
    assert report.rho == pytest.approx(1.0)
    assert not report.applicable
    with pytest.raises(NotApplicableException):
        perturbation_analyzer.verify_epsilon_bound(X, ProjectiveScore(entries=np.ones(n)), 1.0)


def test_degenerate_denominator():
    n = 4
    X = PositiveMatrix(entries=np.ones((n, n)) + 3 * np.eye(n))
    s = ProjectiveScore(entries=np.ones(n))
    report = perturbation_analyzer.build_report(X, s, 1.0)
    assert math.isinf(report.rho)
    assert math.isinf(report.epsilon_bound)
    assert not report.applicable
    with pytest.raises(DegenerateDenominatorException):
        perturbation_analyzer.build_report(X, s, 1.0, strict=True)


def test_report_depends_on_x_and_s_through_xi(rng):
    n = 5
    s = AdditiveScore.centered(rng.standard_normal(n))
    X = PositiveMatrix(entries=np.exp(rank_one_of(s)[1].entries + skew_matrix(rng, n, 0.05)))
    report = perturbation_analyzer.build_report(X, s.to_projective(), 1.0)
    rescaled = perturbation_analyzer.build_report(report.xi, ProjectiveScore(entries=np.ones(n)), 1.0)
    assert np.allclose(report.Xi, rescaled.Xi, atol=1e-14)
    assert report.rho == pytest.approx(rescaled.rho, rel=1e-10)
    assert report.r_bar == pytest.approx(np.mean(report.r), abs=1e-15)


def test_bound_is_quadratic_in_noise(rng):
    n = 5
    s = AdditiveScore.centered(rng.standard_normal(n))
    pattern = skew_matrix(rng, n)
    base = rank_one_of(s)[1].entries
    bounds = []
    for sigma in (0.02, 0.01, 0.005, 0.0025):
        X = PositiveMatrix(entries=np.exp(base + sigma * pattern))
        bounds.append(perturbation_analyzer.build_report(X, s.to_projective(), 1.0).epsilon_bound)
    ratios = [earlier / later for earlier, later in zip(bounds, bounds[1:])]
    assert all(3.0 <= ratio <= 5.0 for ratio in ratios)
    assert ratios[-1] == pytest.approx(4.0, rel=0.25)


def test_epsilon_bound_holds_on_every_applicable_instance():
    """1008 seeded instances over n in {3, 5, 8} and sigma in {0.01, 0.05, 0.1}."""
    for n in (3, 5, 8):
        for sigma in (0.01, 0.05, 0.1):
            summary = perturbation_analyzer.monte_carlo_check(n, sigma, 1.0, trials=112, seed=1000 * n)
            assert summary.applicable > 0
            assert summary.passed == summary.applicable
            assert summary.failed_seeds == []
            assert summary.worst_margin > -1e-14


def test_large_noise_is_rarely_applicable():
    summary = perturbation_analyzer.monte_carlo_check(5, 2.0, 1.0, trials=50, seed=3)
    assert summary.applicability_rate < 0.5
    assert summary.passed == summary.applicable


@pytest.mark.parametrize("sigma", [1e-6, 1e-7])
def test_epsilon_bound_holds_for_vanishing_noise(sigma):
    summary = perturbation_analyzer.monte_carlo_check(5, sigma, 1.0, trials=50, seed=3)
    assert summary.applicable == 50
    assert summary.passed == 50
    assert summary.failed_seeds == []
    assert summary.unconverged_seeds == []


def test_solver_failures_are_reported_apart_from_bound_failures():
    summary = perturbation_analyzer.monte_carlo_check(
        5, 0.05, 1.0, trials=6, seed=1, cfg=SolverConfig(max_iter=1)
    )
    assert len(summary.unconverged_seeds) == 6
    assert summary.failed_seeds == []
    assert summary.applicable == 0
