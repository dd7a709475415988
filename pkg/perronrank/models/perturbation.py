from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_serializer

from perronrank.models.comparison import PositiveMatrix


class PerturbationReport(BaseModel):
    """Centered multiplicative perturbation of X around the comparison matrix of s."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    kappa: float = Field(..., ge=1)
    xi: PositiveMatrix
    Xi: np.ndarray
    norm_Xi: float = Field(..., ge=0)
    rho: float = Field(..., ge=0)
    r: np.ndarray
    r_bar: float
    linear_estimate: np.ndarray
    epsilon_bound: float = Field(..., ge=0)
    epsilon_bound_literal: float = Field(..., ge=0)
    applicable: bool

    @field_serializer("Xi", "r", "linear_estimate")
    def _serialize_array(self, value: np.ndarray):
        return value.tolist()


class EpsilonCheck(BaseModel):
    """Outcome of checking the observed error term against its bound."""

    model_config = ConfigDict(frozen=True)

    passed: bool
    observed_epsilon_norm: float = Field(..., ge=0)
    bound: float = Field(..., ge=0)
    margin: float
    fit_scale: float = Field(..., description="scalar c fitted to v(X) before extracting epsilon")
    slack: float = Field(default=1e-14, ge=0, description="rounding allowance: max(1e-14, 10 * solver residual)")


class PerturbationSummary(BaseModel):
    """Monte-Carlo summary of repeated epsilon checks."""

    n: int
    sigma: float
    kappa: float
    trials: int
    applicable: int
    passed: int
    applicability_rate: float
    worst_margin: Optional[float] = None
    max_observed_to_bound: Optional[float] = None
    failed_seeds: List[int] = Field(default_factory=list, description="seeds whose epsilon exceeded the bound")
    unconverged_seeds: List[int] = Field(default_factory=list, description="seeds where the Perron solver gave up")
