from pydantic import BaseModel, ConfigDict, Field

from perronrank.core.config import settings
from perronrank.models.comparison import AdditiveScore, ProjectiveScore


class SolverConfig(BaseModel):
    """Configuration for the iterative eigen solvers."""

    model_config = ConfigDict(frozen=True)

    tol: float = Field(default=1e-12, gt=0)
    max_iter: int = Field(default=10000, ge=1)
    lazy: bool = Field(
        default=True,
        description="Iterate with (X + lambda_hat*I)/2; same fixed point, no periodic stalling"
    )

    @classmethod
    def from_settings(cls) -> "SolverConfig":
        return cls(tol=settings.solver_tol, max_iter=settings.solver_max_iter)


class PerronPair(BaseModel):
    """Principal eigenvector/eigenvalue of a positive matrix."""

    model_config = ConfigDict(frozen=True)

    v: ProjectiveScore
    eigenvalue: float = Field(..., gt=0, serialization_alias="lambda")
    iterations: int = Field(..., ge=0)
    residual: float = Field(..., ge=0)

    @property
    def n(self) -> int:
        return self.v.n

    @property
    def consistency_index(self) -> float:
        """(lambda - n) / (n - 1); zero exactly for strongly transitive reciprocal input."""
        return (self.eigenvalue - self.n) / (self.n - 1)


class LogPerronResult(BaseModel):
    """Log-domain Perron family score and (1/k) log of the principal eigenvalue."""

    model_config = ConfigDict(frozen=True)

    score: AdditiveScore
    log_lambda: float
    iterations: int = Field(..., ge=0)
    residual: float = Field(..., ge=0)
