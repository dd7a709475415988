"""Ladders of V~_k toward the HodgeRank (k -> 0) and Tropical Rank (k -> inf) limits."""
from typing import List, Optional, Sequence

import numpy as np

from perronrank.core.comparison import exp_scale_map
from perronrank.models.comparison import AdditiveMatrix, AdditiveScore, KParameter, ProjectiveScore
from perronrank.models.ranking import ConvergenceRow, LinearizationGap
from perronrank.models.solver import SolverConfig
from perronrank.services.hodge_rank import hodge_score_additive
from perronrank.services.perron_engine import perron_engine
from perronrank.services.perturbation import perturbation_analyzer
from perronrank.services.tropical_rank import tropical_eigen
from perronrank.utils.logging import get_logger

logger = get_logger(__name__)


def _ratio(current: Optional[float], previous: Optional[float]) -> Optional[float]:
    if current is None or previous is None or previous == 0:
        return None
    return current / previous


def convergence_ladder(
    A: AdditiveMatrix,
    ks: Sequence[float],
    cfg: Optional[SolverConfig] = None
) -> List[ConvergenceRow]:
    """
    ||V~_k(A) - h~(A)||_inf and ||V~_k(A) - m~(A)||_inf for each k in order.

    The tropical column is None when the tropical eigenvector is not unique.
    Ratios compare each rung with the previous one.
    """
    hodge = hodge_score_additive(A).entries
    tropical_data = tropical_eigen(A)
    tropical = tropical_data.eigenvector.entries if tropical_data.unique else None

    rows: List[ConvergenceRow] = []
    previous: Optional[ConvergenceRow] = None
    for k in ks:
        score = perron_engine.log_perron_score(A, k, cfg).score
        hodge_error = float(np.max(np.abs(score.entries - hodge)))
        tropical_error = None if tropical is None else float(np.max(np.abs(score.entries - tropical)))
        row = ConvergenceRow(
            k=KParameter.finite(k),
            score=score,
            hodge_error=hodge_error,
            tropical_error=tropical_error,
            hodge_ratio=_ratio(hodge_error, previous.hodge_error if previous else None),
            tropical_ratio=_ratio(tropical_error, previous.tropical_error if previous else None),
        )
        logger.debug("ladder rung", k=k, hodge_error=hodge_error, tropical_error=tropical_error)
        rows.append(row)
        previous = row
    return rows


def hodge_first_order_gap(A: AdditiveMatrix, k: float) -> LinearizationGap:
    """
    Perturbation report of exp(kA) around 11^T (s = 1, kappa = 1).

    (1/k) log of the linear estimate is the first-order approximation of
    V~_k(A); its distance to h~(A) shrinks like k.
    """
    X = exp_scale_map(A, k)
    report = perturbation_analyzer.build_report(X, ProjectiveScore(entries=np.ones(A.n)), 1.0)

    estimate = None
    gap = None
    if np.all(report.linear_estimate > 0):
        estimate = AdditiveScore.centered(np.log(report.linear_estimate) / k)
        gap = float(np.max(np.abs(estimate.entries - hodge_score_additive(A).entries)))
    return LinearizationGap(
        k=k,
        norm_Xi=report.norm_Xi,
        rho=report.rho,
        applicable=report.applicable,
        estimate=estimate,
        hodge_gap=gap,
    )
