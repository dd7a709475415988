import logging
import sys
from typing import Optional

import structlog

from perronrank.core.config import settings


class _StderrProxy:
    """Resolve ``sys.stderr`` on every write so redirected streams are honoured."""

    def write(self, message: str) -> int:
        return sys.stderr.write(message)

    def flush(self) -> None:
        sys.stderr.flush()


def setup_logging(
    level: Optional[str] = None,
    json_output: Optional[bool] = None
) -> structlog.typing.FilteringBoundLogger:
    """Set up toolkit logging. Output goes to stderr; stdout carries CLI artifacts."""

    level_name = (level or ("DEBUG" if settings.debug else settings.log_level)).upper()
    level_value = getattr(logging, level_name, logging.WARNING)
    use_json = settings.log_json if json_output is None else json_output

    renderer = (
        structlog.processors.JSONRenderer()
        if use_json
        else structlog.dev.ConsoleRenderer(colors=False)
    )

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(level_value),
        logger_factory=structlog.PrintLoggerFactory(file=_StderrProxy()),
        cache_logger_on_first_use=False,
    )

    return structlog.get_logger("perronrank")


def get_logger(name: str) -> structlog.typing.FilteringBoundLogger:
    """Get a logger instance for a specific module."""
    short = name[len("perronrank."):] if name.startswith("perronrank.") else name
    return structlog.get_logger(f"perronrank.{short}")


# Create default logger
logger = setup_logging()
