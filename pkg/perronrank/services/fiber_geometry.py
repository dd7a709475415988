"""
Fibers of the Perron family: matrices with a prescribed Perron pair (the
positive Kalman variety) and the zero fiber of V~_k, which splits into one
row component S_i(k) per row plus multiples of 11^T.
"""
from typing import Optional

import numpy as np
from scipy.special import logsumexp

from perronrank.core.comparison import score_differences
from perronrank.core.config import settings
from perronrank.core.exceptions import (
    InternalInconsistencyException, NotInFiberException, NotInZeroFiberException,
)
from perronrank.models.comparison import (
    AdditiveMatrix, AdditiveScore, KParameter, PositiveMatrix, ProjectiveScore,
)
from perronrank.models.fiber import FiberCertificate, SimplexRows
from perronrank.models.solver import SolverConfig
from perronrank.services.perron_engine import perron_engine
from perronrank.utils.logging import get_logger

logger = get_logger(__name__)


def sample_simplex_rows(n: int, rng: np.random.Generator) -> SimplexRows:
    """n independent uniform points of the open simplex (normalized standard exponentials)."""
    draws = rng.standard_exponential((n, n))
    return SimplexRows(entries=draws / draws.sum(axis=1, keepdims=True))


def kalman_sample(
    w: ProjectiveScore,
    eigenvalue: float,
    seed: int,
    rows: Optional[SimplexRows] = None
) -> PositiveMatrix:
    """
    Random X with Perron pair (w, eigenvalue): X_ij = eigenvalue * w_i * Y_ij / w_j.

    ``rows`` replaces the sampled Y when given.
    """
    if eigenvalue <= 0:
        raise ValueError("eigenvalue must be positive")
    n = w.n
    if rows is None:
        rows = sample_simplex_rows(n, np.random.default_rng(seed))
    elif rows.n != n:
        raise ValueError(f"rows have dimension {rows.n}, expected {n}")
    v = w.entries
    return PositiveMatrix(entries=eigenvalue * v[:, None] * rows.entries / v[None, :])


def psi_map(
    X: PositiveMatrix,
    w: ProjectiveScore,
    eigenvalue: float,
    tol: Optional[float] = None
) -> SimplexRows:
    """Y_ij = X_ij w_j / (eigenvalue w_i); NotInFiberException unless every row sums to 1."""
    if eigenvalue <= 0:
        raise ValueError("eigenvalue must be positive")
    tol = settings.membership_tol if tol is None else tol
    v = w.entries
    Y = X.entries * v[None, :] / (eigenvalue * v[:, None])
    row_sums = Y.sum(axis=1)
    if np.max(np.abs(row_sums - 1.0)) > tol:
        raise NotInFiberException([float(x) for x in row_sums], tol)
    return SimplexRows(entries=Y / row_sums[:, None])


def _row_constants(a: np.ndarray, k: KParameter) -> np.ndarray:
    if k.is_zero:
        return np.mean(a, axis=1)
    if k.is_infinity:
        return np.max(a, axis=1)
    return logsumexp(k.value * a, axis=1) / k.value


def _membership_defect(rows: np.ndarray, k: KParameter) -> float:
    if k.is_zero:
        return float(np.max(np.abs(rows.sum(axis=1))))
    if k.is_infinity:
        return float(np.max(np.abs(np.max(rows, axis=1))))
    return float(np.max(np.abs(np.exp(logsumexp(k.value * rows, axis=1)) - 1.0)))


def zero_fiber_certificate(
    A: AdditiveMatrix,
    k: KParameter,
    tol: Optional[float] = None
) -> FiberCertificate:
    """
    Certify that V~_k(A) = 0 and split A into row components plus c * 11^T.

    Row constants: (1/k) LSE(k A_i) for finite k, the row mean at k = 0 and
    the row maximum at k = inf. A is in the zero fiber iff they agree within
    ``tol``; at k = 0 the row sums are compared instead. c is their mean.
    """
    tol = settings.membership_tol if tol is None else tol
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = A.entries
    constants = _row_constants(a, k)
    compared = constants * A.n if k.is_zero else constants
    spread = float(np.max(compared) - np.min(compared))
    if spread > tol:
        raise NotInZeroFiberException(k.label, spread, [float(x) for x in constants], tol)

    c = float(np.mean(constants))
    rows = a - c
    return FiberCertificate(
        entries=rows,
        k=k,
        score=AdditiveScore.zeros(A.n),
        c=c,
        max_defect=_membership_defect(rows, k),
    )


def fiber_decompose(
    A: AdditiveMatrix,
    k: KParameter,
    cfg: Optional[SolverConfig] = None
) -> FiberCertificate:
    """A = [s_i - s_j] + (zero-fiber element) with s = V~_k(A)."""
    cfg = cfg or perron_engine.config
    s = perron_engine.perron_family_score(A, k, cfg)
    residual = AdditiveMatrix(entries=A.entries - score_differences(s.entries))
    tol = 100 * cfg.tol * max(1.0, float(np.max(np.abs(A.entries))))
    try:
        certificate = zero_fiber_certificate(residual, k, tol)
    except NotInZeroFiberException as e:
        logger.error("fiber translation failed", **e.details)
        raise InternalInconsistencyException(
            "fiber_decompose",
            "A - [s_i - s_j] is not in the zero fiber",
            {"spread": e.details["spread"], "tol": tol}
        ) from e
    return certificate.model_copy(update={"score": s})


def sample_zero_fiber(
    n: int,
    k: KParameter,
    seed: int,
    c: float = 0.0,
    zeros_per_row: int = 1
) -> AdditiveMatrix:
    """
    Random element of the zero fiber of V~_k plus c * 11^T.

    Finite k: rows (1/k) log p for simplex rows p. k = 0: centered normal rows.
    k = inf: negative uniform rows with ``zeros_per_row`` random entries set to 0.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    rng = np.random.default_rng(seed)
    if k.is_finite:
        rows = np.log(sample_simplex_rows(n, rng).entries) / k.value
    elif k.is_zero:
        draws = rng.standard_normal((n, n))
        rows = draws - draws.mean(axis=1, keepdims=True)
    else:
        if not 1 <= zeros_per_row <= n:
            raise ValueError(f"zeros_per_row must lie in [1, {n}]")
        rows = -rng.uniform(0.1, 1.0, size=(n, n))
        for i in range(n):
            rows[i, rng.choice(n, size=zeros_per_row, replace=False)] = 0.0
    return AdditiveMatrix.from_entries(rows + c)


def flattening_defect(p: SimplexRows, k: float) -> float:
    """S_i(0) membership defect (largest row sum) of the centered rows (1/k) log p."""
    if k <= 0:
        raise ValueError("k must be positive")
    rows = np.log(p.entries) / k
    centered = rows - rows.mean(axis=1, keepdims=True)
    return float(np.max(np.abs(centered.sum(axis=1))))
