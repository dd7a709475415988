from typing import Optional

from pydantic import BaseModel, ConfigDict

from perronrank.models.comparison import AdditiveScore, KParameter


class LimitScores(BaseModel):
    """HodgeRank, the Perron family member at k, and Tropical Rank for one input."""

    model_config = ConfigDict(frozen=True)

    k: KParameter
    hodge: AdditiveScore
    perron: AdditiveScore
    log_lambda: Optional[float] = None
    tropical: Optional[AdditiveScore] = None
    tropical_unique: bool


class ConvergenceRow(BaseModel):
    """Distance of V~_k from the two limiting rankings at one rung of a k ladder."""

    model_config = ConfigDict(frozen=True)

    k: KParameter
    score: AdditiveScore
    hodge_error: float
    tropical_error: Optional[float] = None
    hodge_ratio: Optional[float] = None
    tropical_ratio: Optional[float] = None


class LinearizationGap(BaseModel):
    """First-order expansion of exp(kA) around 11^T."""

    model_config = ConfigDict(frozen=True)

    k: float
    norm_Xi: float
    rho: float
    applicable: bool
    estimate: Optional[AdditiveScore] = None
    hodge_gap: Optional[float] = None
