from pydantic import BaseModel
from typing import Any, Dict, Optional

from perronrank.core.exceptions import PerronRankException


class ErrorResponse(BaseModel):
    """Structured diagnostic written to stderr when a command fails."""

    success: bool = False
    error_code: str
    message: str
    details: Optional[Dict[str, Any]] = None

    @classmethod
    def from_exception(cls, exc: PerronRankException) -> "ErrorResponse":
        return cls(
            error_code=exc.error_code or "DOMAIN_ERROR",
            message=exc.message,
            details=exc.details,
        )
