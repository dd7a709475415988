from enum import Enum
from typing import Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from perronrank.models.comparison import KParameter


class NoiseKind(str, Enum):
    """Noise laws for observed comparison matrices."""
    LOGNORMAL_SKEW = "lognormal_skew"
    UNIFORM_SKEW = "uniform_skew"
    LOGNORMAL_FREE = "lognormal_free"


class NoiseModel(BaseModel):
    """Additive noise E on the log-comparison matrix."""

    model_config = ConfigDict(frozen=True)

    kind: NoiseKind
    scale: float = Field(..., gt=0, description="sigma for log-normal laws, delta for uniform")

    @classmethod
    def lognormal_skew(cls, sigma: float) -> "NoiseModel":
        return cls(kind=NoiseKind.LOGNORMAL_SKEW, scale=sigma)

    @classmethod
    def uniform_skew(cls, delta: float) -> "NoiseModel":
        return cls(kind=NoiseKind.UNIFORM_SKEW, scale=delta)

    @classmethod
    def lognormal_free(cls, sigma: float) -> "NoiseModel":
        return cls(kind=NoiseKind.LOGNORMAL_FREE, scale=sigma)

    @property
    def is_skew(self) -> bool:
        return self.kind != NoiseKind.LOGNORMAL_FREE

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """Draw an n x n noise matrix; skew laws mirror the upper triangle negated."""
        if self.kind == NoiseKind.LOGNORMAL_FREE:
            noise = self.scale * rng.standard_normal((n, n))
            np.fill_diagonal(noise, 0.0)
            return noise

        upper = np.triu_indices(n, k=1)
        if self.kind == NoiseKind.LOGNORMAL_SKEW:
            draws = self.scale * rng.standard_normal(len(upper[0]))
        else:
            draws = rng.uniform(-self.scale, self.scale, size=len(upper[0]))
        noise = np.zeros((n, n))
        noise[upper] = draws
        noise[(upper[1], upper[0])] = -draws
        return noise


class Objective(str, Enum):
    """Score recovery objectives."""
    KENDALL_TAU = "kendall_tau"
    L2_ADDITIVE = "l2_additive"
    TOP_ONE_ACCURACY = "top_one_accuracy"

    @property
    def higher_is_better(self) -> bool:
        return self == Objective.TOP_ONE_ACCURACY


class TrialConfig(BaseModel):
    """Monte-Carlo score recovery experiment."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=2)
    true_score: Optional[List[float]] = Field(
        default=None, description="explicit truth (centered on use); None draws a random truth per trial"
    )
    score_scale: float = Field(default=1.0, gt=0, description="std of the random truth")
    noise: NoiseModel
    k_grid: List[KParameter] = Field(..., min_length=1)
    trials: int = Field(..., ge=1)
    base_seed: int = Field(default=0, ge=0)
    objectives: List[Objective] = Field(
        default_factory=lambda: [Objective.KENDALL_TAU, Objective.L2_ADDITIVE, Objective.TOP_ONE_ACCURACY],
        min_length=1,
    )

    @field_validator("k_grid", mode="before")
    @classmethod
    def parse_k_labels(cls, v):
        if isinstance(v, (list, tuple)):
            return [KParameter.parse(str(item)) if isinstance(item, (str, int, float)) else item for item in v]
        return v

    @field_validator("objectives")
    @classmethod
    def dedupe_objectives(cls, v):
        return list(dict.fromkeys(v))

    @model_validator(mode="after")
    def check_truth(self):
        if self.true_score is not None and len(self.true_score) != self.n:
            raise ValueError(f"true_score has {len(self.true_score)} entries, expected n = {self.n}")
        return self


class SweepCell(BaseModel):
    """Aggregate of one (k, objective) pair across trials."""

    k: KParameter
    objective: Objective
    mean: Optional[float] = None
    stderr: Optional[float] = None
    count: int = Field(..., ge=0)
    excluded: int = Field(default=0, ge=0, description="non-unique tropical trials (k = inf only)")
    failed_trials: List[int] = Field(default_factory=list)
    trial_values: Optional[List[Optional[float]]] = None


class SweepTable(BaseModel):
    """Per (k, objective) means and standard errors of a k sweep."""

    trials: int
    base_seed: int
    cells: List[SweepCell]

    def cell(self, k: KParameter, objective: Objective) -> SweepCell:
        for cell in self.cells:
            if cell.k == k and cell.objective == objective:
                return cell
        raise KeyError((k.label, objective.value))

    def cells_for(self, objective: Objective) -> List[SweepCell]:
        return [cell for cell in self.cells if cell.objective == objective]


class BestK(BaseModel):
    """Best grid point for one objective, with the grid points within one standard error."""

    objective: Objective
    k: KParameter
    mean: float
    stderr: float
    within_one_se: List[KParameter]
    note: str


class IndependenceReport(BaseModel):
    """Whether the best k and the paired losses depend on the true score."""

    best_k: Dict[str, List[str]] = Field(description="objective -> best k label per score")
    coincide: Dict[str, bool]
    tied_scores: List[int] = Field(default_factory=list)
    l2_checked: bool = False
    l2_identical: Optional[bool] = None
    max_l2_discrepancy: Optional[float] = None
    tolerance: float = 1e-9
    sweeps: List[SweepTable] = Field(default_factory=list, exclude=True)


class TrialStatus(str, Enum):
    """Outcome of one trial at one grid point."""
    OK = "ok"
    EXCLUDED = "excluded"
    FAILED = "failed"


class KOutcome(BaseModel):
    """Metric values of one trial at one k (empty unless status is ok)."""

    k: KParameter
    status: TrialStatus = TrialStatus.OK
    metrics: Dict[Objective, float] = Field(default_factory=dict)


class TrialResult(BaseModel):
    """All grid outcomes of one trial; depends on (config, index) only."""

    index: int = Field(..., ge=0)
    seed: int
    outcomes: List[KOutcome]
