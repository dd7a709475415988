from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from perronrank.models.comparison import AdditiveScore


class TropicalEigenData(BaseModel):
    """Max-plus eigen data of an additive matrix."""

    model_config = ConfigDict(frozen=True)

    eigenvalue: float = Field(..., serialization_alias="lambda")
    critical_nodes: List[int]
    basis: List[AdditiveScore]
    unique: bool
    eigenvector: Optional[AdditiveScore] = None

    @model_validator(mode="after")
    def check_uniqueness(self):
        if self.unique != (len(self.basis) == 1):
            raise ValueError("unique must hold exactly when the basis has one vector")
        if self.unique and self.eigenvector is None:
            raise ValueError("a unique eigenvector must be present")
        if not self.unique and self.eigenvector is not None:
            raise ValueError("eigenvector is only present when unique")
        return self
