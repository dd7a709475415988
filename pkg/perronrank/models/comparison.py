from enum import Enum
import math
from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, field_serializer, field_validator, model_validator

from perronrank.core.config import settings


def frozen_array(value: Any, ndim: int) -> np.ndarray:
    array = np.array(value, dtype=float, copy=True)
    if array.ndim != ndim:
        raise ValueError(f"expected a {ndim}-dimensional array, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise ValueError("entries must be finite")
    array.flags.writeable = False
    return array


def square_array(array: np.ndarray) -> np.ndarray:
    if array.shape[0] != array.shape[1]:
        raise ValueError(f"matrix must be square, got shape {array.shape}")
    if array.shape[0] < 2:
        raise ValueError("dimension n must be at least 2")
    return array


class ArrayModel(BaseModel):
    """Immutable model holding a read-only float array under ``entries``."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    entries: np.ndarray

    @field_serializer("entries")
    def _serialize_entries(self, value: np.ndarray):
        return value.tolist()

    @property
    def n(self) -> int:
        return int(self.entries.shape[0])


class PositiveMatrix(ArrayModel):
    """Element of the open cone of elementwise positive n x n matrices."""

    @field_validator("entries", mode="before")
    @classmethod
    def validate_entries(cls, v):
        array = square_array(frozen_array(v, 2))
        if not np.all(array > 0):
            raise ValueError("every entry of a PositiveMatrix must be strictly positive")
        return array

    def is_reciprocal(self, tol: Optional[float] = None) -> bool:
        tol = settings.skew_tol if tol is None else tol
        logs = np.log(self.entries)
        return bool(np.max(np.abs(logs + logs.T)) <= tol)


class AdditiveMatrix(ArrayModel):
    """Real n x n matrix of log-comparisons; ``skew`` asserts A = -A^T."""

    skew: bool = False

    @field_validator("entries", mode="before")
    @classmethod
    def validate_entries(cls, v):
        return square_array(frozen_array(v, 2))

    @model_validator(mode="after")
    def check_skew(self):
        if self.skew and not is_skew(self.entries):
            raise ValueError(f"skew flag set but A_ij + A_ji exceeds {settings.skew_tol:g}")
        return self

    @classmethod
    def from_entries(cls, entries: Any) -> "AdditiveMatrix":
        """Build an AdditiveMatrix, setting ``skew`` from the entries."""
        array = np.asarray(entries, dtype=float)
        return cls(entries=array, skew=is_skew(array))


def is_skew(entries: np.ndarray, tol: Optional[float] = None) -> bool:
    tol = settings.skew_tol if tol is None else tol
    entries = np.asarray(entries, dtype=float)
    return bool(np.max(np.abs(entries + entries.T)) <= tol)


class ProjectiveScore(ArrayModel):
    """Positive score with geometric mean 1 (representative of PR^{n-1}_+)."""

    @field_validator("entries", mode="before")
    @classmethod
    def validate_entries(cls, v):
        array = frozen_array(v, 1)
        if array.shape[0] < 2:
            raise ValueError("dimension n must be at least 2")
        if not np.all(array > 0):
            raise ValueError("ProjectiveScore entries must be positive")
        logs = np.log(array)
        if abs(np.mean(logs)) > 1e-12 * max(1.0, float(np.max(np.abs(logs)))):
            raise ValueError("geometric mean of a ProjectiveScore must be 1")
        return array

    def to_additive(self) -> "AdditiveScore":
        return AdditiveScore.centered(np.log(self.entries))


class AdditiveScore(ArrayModel):
    """Real score with entries summing to zero (representative of R^n / R*1)."""

    @field_validator("entries", mode="before")
    @classmethod
    def validate_entries(cls, v):
        array = frozen_array(v, 1)
        if array.shape[0] < 2:
            raise ValueError("dimension n must be at least 2")
        scale = max(1.0, float(np.max(np.abs(array))))
        if abs(math.fsum(array)) > 1e-12 * scale:
            raise ValueError("AdditiveScore entries must sum to zero")
        return array

    @classmethod
    def centered(cls, values: Any) -> "AdditiveScore":
        """Project an arbitrary real vector to its sum-zero representative."""
        array = np.asarray(values, dtype=float)
        return cls(entries=array - np.mean(array))

    @classmethod
    def zeros(cls, n: int) -> "AdditiveScore":
        return cls(entries=np.zeros(n))

    def to_projective(self) -> ProjectiveScore:
        return ProjectiveScore(entries=np.exp(self.entries - np.mean(self.entries)))


class KKind(str, Enum):
    """Regimes of the Perron family parameter."""
    ZERO = "zero"
    FINITE = "finite"
    INFINITY = "infinity"


class KParameter(BaseModel):
    """The extended parameter k in {0} u (0, inf) u {inf}."""

    model_config = ConfigDict(frozen=True)

    kind: KKind
    value: Optional[float] = None

    @model_validator(mode="after")
    def check_value(self):
        if self.kind == KKind.FINITE:
            if self.value is None or not math.isfinite(self.value) or self.value <= 0:
                raise ValueError("Finite k must carry a finite value > 0")
        elif self.value is not None:
            raise ValueError(f"{self.kind.value} k carries no value")
        return self

    @classmethod
    def zero(cls) -> "KParameter":
        return cls(kind=KKind.ZERO)

    @classmethod
    def finite(cls, k: float) -> "KParameter":
        return cls(kind=KKind.FINITE, value=float(k))

    @classmethod
    def infinity(cls) -> "KParameter":
        return cls(kind=KKind.INFINITY)

    @classmethod
    def parse(cls, text: str) -> "KParameter":
        """Parse "0", "inf" / "infinity" / "∞", or a positive float."""
        token = str(text).strip().lower()
        if token in ("inf", "+inf", "infinity", "∞"):
            return cls.infinity()
        value = float(token)
        if value == 0:
            return cls.zero()
        if math.isinf(value) and value > 0:
            return cls.infinity()
        return cls.finite(value)

    @property
    def is_zero(self) -> bool:
        return self.kind == KKind.ZERO

    @property
    def is_finite(self) -> bool:
        return self.kind == KKind.FINITE

    @property
    def is_infinity(self) -> bool:
        return self.kind == KKind.INFINITY

    @property
    def label(self) -> str:
        if self.kind == KKind.ZERO:
            return "0"
        if self.kind == KKind.INFINITY:
            return "inf"
        return repr(self.value)

    def sort_key(self):
        order = {KKind.ZERO: 0, KKind.FINITE: 1, KKind.INFINITY: 2}
        return (order[self.kind], self.value or 0.0)

    def __str__(self) -> str:
        return self.label
