import numpy as np
from pydantic import Field, field_validator

from perronrank.models.comparison import AdditiveScore, ArrayModel, KParameter, frozen_array, square_array


class SimplexRows(ArrayModel):
    """n rows, each in the open (n-1)-simplex."""

    @field_validator("entries", mode="before")
    @classmethod
    def validate_entries(cls, v):
        array = square_array(frozen_array(v, 2))
        if not np.all(array > 0):
            raise ValueError("simplex rows must be strictly positive")
        if np.max(np.abs(array.sum(axis=1) - 1.0)) > 1e-12:
            raise ValueError("every simplex row must sum to 1")
        return array


class FiberCertificate(ArrayModel):
    """
    Decomposition A = [s_i - s_j] + rows + c * 11^T.

    ``entries`` holds the row components (row i is the S_i(k) part).
    """

    k: KParameter
    score: AdditiveScore
    c: float
    max_defect: float = Field(..., ge=0)

    @field_validator("entries", mode="before")
    @classmethod
    def validate_entries(cls, v):
        return square_array(frozen_array(v, 2))

    @property
    def row_components(self) -> np.ndarray:
        return self.entries

    def reconstruct(self) -> np.ndarray:
        s = self.score.entries
        return (s[:, None] - s[None, :]) + self.entries + self.c
