from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field


class CommandSpec(BaseModel):
    """One parsed CLI invocation."""

    subcommand: str = Field(..., min_length=1)
    flags: Dict[str, Any] = Field(default_factory=dict)
    input_path: Optional[Path] = None
    output_path: Optional[Path] = None
