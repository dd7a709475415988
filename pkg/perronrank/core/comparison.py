"""
Core-domain operations: exp/log bridges between multiplicative and additive
comparison data, Hadamard powers, strongly transitive matrices and the
canonical score representatives.
"""
from typing import Optional, Tuple

import numpy as np

from perronrank.core.config import settings
from perronrank.core.exceptions import NonPositiveEntryException, OverflowRiskException
from perronrank.models.comparison import (
    AdditiveMatrix, AdditiveScore, PositiveMatrix, ProjectiveScore, is_skew,
)


def _check_exponent(magnitude: float) -> None:
    if magnitude > settings.overflow_threshold:
        raise OverflowRiskException(float(magnitude), settings.overflow_threshold)


def log_map(X: PositiveMatrix) -> AdditiveMatrix:
    """Entrywise natural log; ``skew`` is set iff X is reciprocal within tolerance."""
    logs = np.log(X.entries)
    return AdditiveMatrix(entries=logs, skew=is_skew(logs))


def exp_scale_map(A: AdditiveMatrix, k: float) -> PositiveMatrix:
    """[exp(k * A_ij)]; raises OverflowRiskException when k*max|A| is too large."""
    if k <= 0:
        raise ValueError("k must be positive")
    _check_exponent(k * float(np.max(np.abs(A.entries))))
    return PositiveMatrix(entries=np.exp(k * A.entries))


def hadamard_power(X: PositiveMatrix, k: float) -> PositiveMatrix:
    """Entrywise k-th power [X_ij^k]."""
    if k <= 0:
        raise ValueError("k must be positive")
    if k == 1:
        return X
    _check_exponent(k * float(np.max(np.abs(np.log(X.entries)))))
    return PositiveMatrix(entries=np.power(X.entries, k))


def score_differences(s: np.ndarray) -> np.ndarray:
    """[s_i - s_j] for a plain vector."""
    s = np.asarray(s, dtype=float)
    return s[:, None] - s[None, :]


def rank_one_of(s: AdditiveScore) -> Tuple[PositiveMatrix, AdditiveMatrix]:
    """Strongly transitive pair ([exp(s_i - s_j)], [s_i - s_j])."""
    diffs = score_differences(s.entries)
    return PositiveMatrix(entries=np.exp(diffs)), AdditiveMatrix(entries=diffs, skew=True)


def normalize_projective(v) -> ProjectiveScore:
    """Rescale a positive vector to geometric mean 1."""
    array = np.asarray(v, dtype=float)
    bad = np.flatnonzero(~(np.isfinite(array) & (array > 0)))
    if bad.size:
        index = int(bad[0])
        raise NonPositiveEntryException(index, float(array[index]))
    logs = np.log(array)
    return ProjectiveScore(entries=np.exp(logs - np.mean(logs)))


def is_strongly_transitive(A: AdditiveMatrix, tol: Optional[float] = None) -> bool:
    """True iff |A_ij - A_ik - A_kj| <= tol for all triples (i, j, k)."""
    tol = settings.skew_tol if tol is None else tol
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = A.entries
    # defect[i, k, j] = A_ij - A_ik - A_kj
    defect = a[:, None, :] - a[:, :, None] - a[None, :, :]
    return bool(np.max(np.abs(defect)) <= tol)
