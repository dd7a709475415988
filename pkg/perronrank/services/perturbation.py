"""
Perturbation of the Perron vector around a strongly transitive matrix.

For X near [s_i/s_j], xi = [s_j/s_i * X_ij] is near kappa*11^T + (1 - kappa)I,
whose Perron vector is 1. Writing Xi for the difference and r for its row
sums, v(X) = s * (1 + (r - r_bar)/(kappa n) + epsilon) up to scale.
"""
import math
from typing import Optional

import numpy as np

from perronrank.core.comparison import rank_one_of
from perronrank.core.exceptions import (
    DegenerateDenominatorException, NoConvergenceException, NotApplicableException,
)
from perronrank.models.comparison import AdditiveScore, PositiveMatrix, ProjectiveScore
from perronrank.models.lab import NoiseModel
from perronrank.models.perturbation import EpsilonCheck, PerturbationReport, PerturbationSummary
from perronrank.models.solver import SolverConfig
from perronrank.services.perron_engine import perron_engine
from perronrank.utils.helpers import derive_seed
from perronrank.utils.logging import get_logger

logger = get_logger(__name__)

# Strict inequality slack for the exact-zero case.
_BOUND_SLACK = 1e-14
# Eigenvector error allowed per unit of the solver residual.
_RESIDUAL_SLACK = 10.0


def spectral_norm(M: np.ndarray, tol: float = 1e-12, max_iter: int = 10000) -> float:
    """Largest singular value by power iteration on M^T M (Rayleigh quotient)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = np.asarray(M, dtype=float)
    gram = m.T @ m
    if not np.any(gram):
        return 0.0

    # Start from the Gram column of largest norm: never orthogonal to every top singular vector
    v = gram[:, int(np.argmax(np.linalg.norm(gram, axis=0)))]
    v = v / np.linalg.norm(v)
    value = float(v @ gram @ v)
    for _ in range(max_iter):
        w = gram @ v
        norm = np.linalg.norm(w)
        if norm == 0:
            return 0.0
        v = w / norm
        updated = float(v @ gram @ v)
        if abs(updated - value) <= tol * updated:
            value = updated
            break
        value = updated
    else:
        logger.warning("spectral_norm reached max_iter", max_iter=max_iter)
    return math.sqrt(max(value, 0.0))


def rho_from_norm(norm_xi: float, n: int, kappa: float) -> float:
    """rho = (2||Xi|| / (n kappa - 2||Xi||))^2, +inf when the denominator is not positive."""
    denominator = n * kappa - 2.0 * norm_xi
    if denominator <= 0:
        return math.inf
    return (2.0 * norm_xi / denominator) ** 2


class PerturbationAnalyzer:
    """Builds perturbation reports and checks the epsilon bound against the exact Perron vector."""

    def __init__(self):
        self.logger = get_logger("perturbation")

    def build_report(
        self,
        X: PositiveMatrix,
        s: ProjectiveScore,
        kappa: float = 1.0,
        strict: bool = False
    ) -> PerturbationReport:
        """
        Populate xi, Xi, rho, r, r_bar, the linear estimate and both bounds.

        ``epsilon_bound`` uses sqrt(rho)/(1 - sqrt(rho)), the factor that is
        quadratic in ||Xi||; ``epsilon_bound_literal`` uses rho/(1 - rho).
        With a non-positive denominator the report is inapplicable with
        infinite rho, or DegenerateDenominatorException is raised when ``strict``.
        """
        if kappa < 1:
            raise ValueError("kappa must be at least 1")
        if s.n != X.n:
            raise ValueError(f"score dimension {s.n} does not match matrix dimension {X.n}")

        n = X.n
        w = s.entries
        xi = X.entries * w[None, :] / w[:, None]
        Xi = xi - kappa * np.ones((n, n)) - (1.0 - kappa) * np.eye(n)
        norm_xi = spectral_norm(Xi)
        r = Xi.sum(axis=1)
        r_bar = float(np.mean(r))
        linear_estimate = w * (1.0 + (r - r_bar) / (kappa * n))

        rho = rho_from_norm(norm_xi, n, kappa)
        if math.isinf(rho):
            if strict:
                raise DegenerateDenominatorException(norm_xi, n, kappa)
            self.logger.warning("degenerate perturbation denominator", norm_xi=norm_xi, n=n, kappa=kappa)
            bound = literal = math.inf
        else:
            scale = norm_xi / (kappa * math.sqrt(n))
            root = math.sqrt(rho)
            bound = root / (1.0 - root) * scale if root < 1 else math.inf
            literal = rho / (1.0 - rho) * scale if rho < 1 else math.inf

        return PerturbationReport(
            kappa=kappa,
            xi=PositiveMatrix(entries=xi),
            Xi=Xi,
            norm_Xi=norm_xi,
            rho=rho,
            r=r,
            r_bar=r_bar,
            linear_estimate=linear_estimate,
            epsilon_bound=bound,
            epsilon_bound_literal=literal,
            applicable=rho < 0.5,
        )

    def verify_epsilon_bound(
        self,
        X: PositiveMatrix,
        s: ProjectiveScore,
        kappa: float = 1.0,
        cfg: Optional[SolverConfig] = None
    ) -> EpsilonCheck:
        """
        Extract epsilon from the exact v(X) and compare its 2-norm with the bound.

        The projective scale of v(X) is fixed by the least-squares scalar c
        minimizing ||c v/s - t||_2, t = 1 + (r - r_bar)/(kappa n).
        v(X) comes from undamped iteration, which is exact after one step when
        Xi = 0; the check allows max(1e-14, 10 * residual) for what is left.
        """
        report = self.build_report(X, s, kappa)
        if not report.applicable:
            raise NotApplicableException(report.rho)

        solver = (cfg or perron_engine.config).model_copy(update={"lazy": False})
        pair = perron_engine.perron_pair(X, solver)
        n = X.n
        q = pair.v.entries / s.entries
        target = 1.0 + (report.r - report.r_bar) / (kappa * n)
        fit_scale = float(q @ target) / float(q @ q)
        epsilon = fit_scale * q - target

        observed = float(np.linalg.norm(epsilon))
        slack = max(_BOUND_SLACK, _RESIDUAL_SLACK * pair.residual)
        passed = observed < report.epsilon_bound + slack
        if not passed:
            self.logger.warning(
                "epsilon bound violated",
                observed=observed,
                bound=report.epsilon_bound,
                rho=report.rho,
                solver_residual=pair.residual
            )
        return EpsilonCheck(
            passed=passed,
            observed_epsilon_norm=observed,
            bound=report.epsilon_bound,
            margin=report.epsilon_bound - observed,
            fit_scale=fit_scale,
            slack=slack,
        )

    def monte_carlo_check(
        self,
        n: int,
        sigma: float,
        kappa: float = 1.0,
        trials: int = 100,
        seed: int = 0,
        cfg: Optional[SolverConfig] = None
    ) -> PerturbationSummary:
        """
        Repeat the epsilon check on seeded instances [s_i - s_j] + skew noise.

        Trial t uses derive_seed(seed, t); the true score has standard normal entries.
        """
        noise = NoiseModel.lognormal_skew(sigma)
        applicable = 0
        passed = 0
        worst_margin = None
        max_ratio = None
        failed_seeds = []
        unconverged_seeds = []

        for trial in range(trials):
            trial_seed = derive_seed(seed, trial)
            rng = np.random.default_rng(trial_seed)
            truth = AdditiveScore.centered(rng.standard_normal(n))
            _, A_true = rank_one_of(truth)
            X = PositiveMatrix(entries=np.exp(A_true.entries + noise.sample(rng, n)))
            try:
                check = self.verify_epsilon_bound(X, truth.to_projective(), kappa, cfg)
            except NotApplicableException:
                continue
            except NoConvergenceException:
                unconverged_seeds.append(trial_seed)
                continue

            applicable += 1
            if check.passed:
                passed += 1
            else:
                failed_seeds.append(trial_seed)
            worst_margin = check.margin if worst_margin is None else min(worst_margin, check.margin)
            if check.bound > 0:
                ratio = check.observed_epsilon_norm / check.bound
                max_ratio = ratio if max_ratio is None else max(max_ratio, ratio)

        self.logger.info(
            "perturbation monte carlo finished",
            n=n, sigma=sigma, trials=trials, applicable=applicable, passed=passed,
            unconverged=len(unconverged_seeds)
        )
        return PerturbationSummary(
            n=n,
            sigma=sigma,
            kappa=kappa,
            trials=trials,
            applicable=applicable,
            passed=passed,
            applicability_rate=applicable / trials if trials else 0.0,
            worst_margin=worst_margin,
            max_observed_to_bound=max_ratio,
            failed_seeds=failed_seeds,
            unconverged_seeds=unconverged_seeds,
        )


# Global analyzer instance
perturbation_analyzer = PerturbationAnalyzer()
