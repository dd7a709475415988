"""HodgeRank: row geometric means, centered row means, and the l2 projection onto ST."""
from typing import Tuple

import numpy as np

from perronrank.core.comparison import score_differences
from perronrank.models.comparison import AdditiveMatrix, AdditiveScore, PositiveMatrix, ProjectiveScore


def hodge_score_multiplicative(X: PositiveMatrix) -> ProjectiveScore:
    """h(X)_i proportional to (prod_j X_ij)^(1/n), computed through log row means."""
    row_means = np.mean(np.log(X.entries), axis=1)
    return ProjectiveScore(entries=np.exp(row_means - np.mean(row_means)))


def hodge_score_additive(A: AdditiveMatrix) -> AdditiveScore:
    """Centered row means of A."""
    return AdditiveScore.centered(np.mean(A.entries, axis=1))


def l2_project_to_st(A: AdditiveMatrix) -> Tuple[AdditiveScore, AdditiveMatrix]:
    """
    Sum-zero s minimizing ||A - [s_i - s_j]||_F, and the residual matrix.

    The normal equations give 2n s_i = (row sum)_i - (column sum)_i, i.e. the
    row means of the skew part (A - A^T)/2; for skew A these are the row means.
    """
    a = A.entries
    n = a.shape[0]
    s = AdditiveScore.centered((a.sum(axis=1) - a.sum(axis=0)) / (2 * n))
    residual = a - score_differences(s.entries)
    return s, AdditiveMatrix.from_entries(residual)
