"""
Max-plus eigentheory on additive matrices: max cycle mean (Karp), Kleene star
(Floyd-Warshall closure), critical nodes and the eigenvector basis.

Edge i -> j carries weight A_ij, so eigenvectors satisfy
max_j (A_ij + x_j) = lambda + x_i.
"""
from typing import List

import numpy as np

from perronrank.core.comparison import log_map, normalize_projective
from perronrank.core.config import settings
from perronrank.core.exceptions import NonUniqueTropicalException, PositiveCycleException
from perronrank.models.comparison import AdditiveMatrix, AdditiveScore, PositiveMatrix, ProjectiveScore
from perronrank.models.tropical import TropicalEigenData
from perronrank.utils.logging import get_logger

logger = get_logger(__name__)


def max_cycle_mean(A: AdditiveMatrix) -> float:
    """Karp's algorithm; the complete digraph is strongly connected, so node 0 is a valid source."""
    a = A.entries
    n = a.shape[0]
    # walks[m, v]: max weight of a walk with exactly m edges from node 0 to v
    walks = np.full((n + 1, n), -np.inf)
    walks[0, 0] = 0.0
    for m in range(1, n + 1):
        walks[m] = np.max(walks[m - 1][:, None] + a, axis=0)

    best = -np.inf
    for v in range(n):
        if not np.isfinite(walks[n, v]):
            continue
        ratios = [
            (walks[n, v] - walks[m, v]) / (n - m)
            for m in range(n)
            if np.isfinite(walks[m, v])
        ]
        best = max(best, min(ratios))
    return float(best)


def max_plus_product(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """(L (x) R)_ij = max_k L_ik + R_kj."""
    return np.max(left[:, :, None] + right[None, :, :], axis=1)


def _plus_closure(b: np.ndarray) -> np.ndarray:
    """B+ = B (+) B^2 (+) ... by Floyd-Warshall; valid when no cycle is positive."""
    closure = np.array(b, dtype=float, copy=True)
    for k in range(closure.shape[0]):
        closure = np.maximum(closure, closure[:, k, None] + closure[None, k, :])
    return closure


def kleene_star(B: AdditiveMatrix) -> AdditiveMatrix:
    """B* = I (+) B (+) ... (+) B^(n-1); B*_ij is the max weight of a path i -> j."""
    cycle_mean = max_cycle_mean(B)
    if cycle_mean > settings.tropical_tol:
        raise PositiveCycleException(cycle_mean)
    n = B.n
    identity = np.full((n, n), -np.inf)
    np.fill_diagonal(identity, 0.0)
    star = np.maximum(identity, _plus_closure(B.entries))
    return AdditiveMatrix(entries=star)


def _dedupe(columns: List[np.ndarray], tol: float) -> List[np.ndarray]:
    unique: List[np.ndarray] = []
    for column in columns:
        if not any(np.max(np.abs(column - seen)) <= tol for seen in unique):
            unique.append(column)
    return unique


def tropical_eigen(A: AdditiveMatrix) -> TropicalEigenData:
    """Eigenvalue, critical nodes and centered critical columns of (A - lambda)*."""
    tol = settings.tropical_tol
    eigenvalue = max_cycle_mean(A)
    shifted = A.entries - eigenvalue
    closure = _plus_closure(shifted)
    critical = [int(i) for i in np.flatnonzero(np.abs(np.diag(closure)) <= tol)]

    star = np.maximum(closure, np.where(np.eye(A.n, dtype=bool), 0.0, -np.inf))
    columns = [star[:, i] - np.mean(star[:, i]) for i in critical]
    basis = _dedupe(columns, tol)

    unique = len(basis) == 1
    if not unique:
        logger.debug("tropical eigenvector not unique", basis_size=len(basis), critical=critical)
    scores = [AdditiveScore.centered(column) for column in basis]
    return TropicalEigenData(
        eigenvalue=eigenvalue,
        critical_nodes=critical,
        basis=scores,
        unique=unique,
        eigenvector=scores[0] if unique else None,
    )


def tropical_score_additive(A: AdditiveMatrix) -> AdditiveScore:
    """The unique additive tropical eigenvector, or NonUniqueTropicalException."""
    data = tropical_eigen(A)
    if not data.unique:
        raise NonUniqueTropicalException(data)
    return data.eigenvector


def tropical_score(X: PositiveMatrix) -> ProjectiveScore:
    """m(X): exp of the max-plus eigenvector of log X, geometric mean 1."""
    return normalize_projective(np.exp(tropical_score_additive(log_map(X)).entries))
