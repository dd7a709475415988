from typing import Optional, Union

import numpy as np
from scipy.special import logsumexp

from perronrank.core.comparison import log_map, normalize_projective
from perronrank.core.exceptions import NoConvergenceException
from perronrank.models.comparison import (
    AdditiveMatrix, AdditiveScore, KParameter, PositiveMatrix, ProjectiveScore,
)
from perronrank.models.ranking import LimitScores
from perronrank.models.solver import LogPerronResult, PerronPair, SolverConfig
from perronrank.services.hodge_rank import hodge_score_additive
from perronrank.services.tropical_rank import tropical_eigen, tropical_score_additive
from perronrank.utils.logging import get_logger

logger = get_logger(__name__)

ComparisonInput = Union[PositiveMatrix, AdditiveMatrix]

# Stagnation floor for the log-domain iterate, in ulps of its magnitude.
_ROUNDING_ULPS = 16


def lse_apply(M: np.ndarray, y: np.ndarray) -> np.ndarray:
    """LSE-apply(M, y)_i = log sum_j exp(M_ij + y_j), max-shift stabilized."""
    return logsumexp(M + y[None, :], axis=1)


def _midpoint(values: np.ndarray) -> float:
    return 0.5 * (float(np.max(values)) + float(np.min(values)))


class PerronEngine:
    """
    Principal eigenpairs of positive matrices and the Perron family V_k.

    Both solvers are power iterations from the barycenter. With ``lazy`` set,
    each step applies (X + lambda_hat I)/2 instead of X: the eigenvector is the
    same, but eigenvalues of exp(kA) near lambda * (root of unity), which appear
    when k is large and the critical cycle is long, no longer stall convergence.
    """

    def __init__(self, config: Optional[SolverConfig] = None):
        self.config = config or SolverConfig.from_settings()
        self.logger = get_logger("perron_engine")

    def _cfg(self, cfg: Optional[SolverConfig]) -> SolverConfig:
        return cfg or self.config

    def perron_pair(self, X: PositiveMatrix, cfg: Optional[SolverConfig] = None) -> PerronPair:
        """
        Power iteration for (v(X), lambda(X)).

        The eigenvalue estimate is the Collatz-Wielandt midpoint of (Xv)_i / v_i;
        the residual is ||Xv - lambda v||_inf / (lambda ||v||_inf).
        """
        cfg = self._cfg(cfg)
        x = X.entries
        v = np.ones(X.n)
        residual = np.inf

        for iteration in range(1, cfg.max_iter + 1):
            y = x @ v
            eigenvalue = _midpoint(y / v)
            residual = float(np.max(np.abs(y - eigenvalue * v)) / (eigenvalue * np.max(v)))
            if residual <= cfg.tol:
                break
            if cfg.lazy:
                y = y + eigenvalue * v
            v = y / np.max(y)
        else:
            self.logger.warning("perron_pair did not converge", max_iter=cfg.max_iter, residual=residual)
            raise NoConvergenceException("perron_pair", cfg.max_iter, residual)

        self.logger.debug("perron_pair converged", iterations=iteration, residual=residual)
        return PerronPair(
            v=normalize_projective(v),
            eigenvalue=eigenvalue,
            iterations=iteration,
            residual=residual,
        )

    def log_perron_score(
        self,
        A: Union[AdditiveMatrix, np.ndarray],
        k: float,
        cfg: Optional[SolverConfig] = None
    ) -> LogPerronResult:
        """
        Log version of the Perron family at finite k, never materializing exp(kA).

        Iterates y <- LSE-apply(kA, y) re-centered to sum zero, with y = k * x.
        Stops when the centered change is below cfg.tol * k (or rounding level).
        """
        if k <= 0:
            raise ValueError("k must be positive")
        cfg = self._cfg(cfg)
        a = A.entries if isinstance(A, AdditiveMatrix) else np.asarray(A, dtype=float)
        M = k * a
        y = np.zeros(a.shape[0])
        change = np.inf

        for iteration in range(1, cfg.max_iter + 1):
            z = lse_apply(M, y)
            if cfg.lazy:
                z = np.logaddexp(z, _midpoint(z - y) + y)
            y_next = z - np.mean(z)
            change = float(np.max(np.abs(y_next - y)))
            y = y_next
            floor = _ROUNDING_ULPS * np.finfo(float).eps * max(1.0, float(np.max(np.abs(z))))
            if change <= max(cfg.tol * k, floor):
                break
        else:
            self.logger.warning("log_perron_score did not converge", k=k, max_iter=cfg.max_iter, change=change)
            raise NoConvergenceException("log_perron_score", cfg.max_iter, change / k)

        gaps = lse_apply(M, y) - y
        log_lambda_k = _midpoint(gaps)
        residual = float(np.max(np.abs(gaps - log_lambda_k)))
        self.logger.debug("log_perron_score converged", k=k, iterations=iteration, residual=residual)
        return LogPerronResult(
            score=AdditiveScore.centered(y / k),
            log_lambda=log_lambda_k / k,
            iterations=iteration,
            residual=residual,
        )

    def perron_family_score(
        self,
        comparison: ComparisonInput,
        k: KParameter,
        cfg: Optional[SolverConfig] = None
    ) -> AdditiveScore:
        """Dispatch to HodgeRank (k = 0), Tropical Rank (k = inf) or the log-domain solver."""
        A = comparison if isinstance(comparison, AdditiveMatrix) else log_map(comparison)
        if k.is_zero:
            return hodge_score_additive(A)
        if k.is_infinity:
            return tropical_score_additive(A)
        return self.log_perron_score(A, k.value, cfg).score

    def perron_family_multiplicative(
        self,
        comparison: ComparisonInput,
        k: KParameter,
        cfg: Optional[SolverConfig] = None
    ) -> ProjectiveScore:
        """V_k(X) = v(X^(k))^(1/k) with geometric mean 1."""
        return self.perron_family_score(comparison, k, cfg).to_projective()

    def rank_all_limits(
        self,
        comparison: ComparisonInput,
        k: KParameter,
        cfg: Optional[SolverConfig] = None
    ) -> LimitScores:
        """HodgeRank, V_k and Tropical Rank side by side; Tropical is None when not unique."""
        A = comparison if isinstance(comparison, AdditiveMatrix) else log_map(comparison)
        log_lambda = None
        if k.is_finite:
            result = self.log_perron_score(A, k.value, cfg)
            perron, log_lambda = result.score, result.log_lambda
        else:
            perron = self.perron_family_score(A, k, cfg)

        tropical_data = tropical_eigen(A)
        return LimitScores(
            k=k,
            hodge=hodge_score_additive(A),
            perron=perron,
            log_lambda=log_lambda,
            tropical=tropical_data.eigenvector,
            tropical_unique=tropical_data.unique,
        )


# Global engine instance
perron_engine = PerronEngine()
