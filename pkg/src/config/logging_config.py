"""
Logging configuration and setup for the formatter pipeline.
Human-readable logs go through loguru, structured event records through
structlog; both write to stderr so stdout stays reserved for command output.
"""

import logging
import sys
import uuid
from contextlib import contextmanager
from contextvars import ContextVar
from pathlib import Path
from typing import Any, Dict, Iterator, Optional

import structlog
from loguru import logger

from .settings import get_settings

run_id: ContextVar[Optional[str]] = ContextVar("run_id", default=None)


class _CurrentStderr:
    """Writes to whatever sys.stderr is at call time."""

    def write(self, text: str) -> int:
        return sys.stderr.write(text)

    def flush(self) -> None:
        sys.stderr.flush()


def _write_stderr(message) -> None:
    sys.stderr.write(str(message))


class LoggerSetup:
    """Centralized logging setup for loguru and structlog."""

    def __init__(self, level: Optional[str] = None, fmt: Optional[str] = None, file: Optional[str] = None):
        config = get_settings()
        self.level = (level or config.log_level or "INFO").upper()
        self.format = fmt or getattr(config.logging, "format", "structured")
        self.file = file if file is not None else getattr(config.logging, "file", None)
        self.debug = bool(getattr(config, "debug", False))

        self._setup_structlog()
        self._setup_loguru()

    def _setup_structlog(self):
        """Configure structlog to emit one JSON record per event."""
        renderer = (
            structlog.dev.ConsoleRenderer(colors=False)
            if self.format == "simple"
            else structlog.processors.JSONRenderer(sort_keys=True)
        )
        structlog.configure(
            processors=[
                structlog.contextvars.merge_contextvars,
                structlog.processors.add_log_level,
                structlog.processors.TimeStamper(fmt="iso"),
                renderer,
            ],
            wrapper_class=structlog.make_filtering_bound_logger(
                getattr(logging, self.level)
            ),
            logger_factory=structlog.PrintLoggerFactory(file=_CurrentStderr()),
            cache_logger_on_first_use=False,
        )

    def _setup_loguru(self):
        """Configure loguru sinks."""
        logger.remove()
        logger.configure(extra={"component": "-"})
        logger.add(
            _write_stderr,
            format=self._get_log_format(),
            level=self.level,
            colorize=False,
            backtrace=self.debug,
            diagnose=self.debug,
        )

        if self.file:
            log_path = Path(self.file)
            try:
                log_path.parent.mkdir(parents=True, exist_ok=True)
                logger.add(
                    log_path,
                    format=self._get_log_format(for_file=True),
                    level=self.level,
                    rotation="1 day",
                    retention="30 days",
                    compression="gz",
                )
            except PermissionError:
                logger.warning(
                    f"Cannot write log file {log_path}; continuing with console logging only."
                )

    def _get_log_format(self, for_file: bool = False) -> str:
        """Get appropriate log format based on configuration."""
        if self.format == "json":
            return "{time:YYYY-MM-DD HH:mm:ss} | {level} | {name} | {message} | {extra}"
        elif self.format == "simple":
            return "{level: <8} | {message}"
        if for_file:
            return "{time:YYYY-MM-DD HH:mm:ss.SSS} | {level: <8} | {name}:{function}:{line} | {message}"
        return "{time:HH:mm:ss.SSS} | {level: <8} | {extra[component]} | {message}"


class PipelineLogger:
    """Component logger that writes through loguru and structlog."""

    def __init__(self, name: str):
        self.name = name
        self.logger = logger.bind(component=name)
        self.struct_logger = structlog.get_logger(name)

    def debug(self, message: str, **kwargs):
        self.logger.bind(**kwargs).debug(message)

    def info(self, message: str, **kwargs):
        self.logger.bind(**kwargs).info(message)

    def warning(self, message: str, **kwargs):
        self.logger.bind(**kwargs).warning(message)

    def error(self, message: str, **kwargs):
        self.logger.bind(**kwargs).error(message)

    def exception(self, message: str, **kwargs):
        self.logger.bind(**kwargs).exception(message)

    def event(self, name: str, **fields: Any) -> None:
        """Emit one structured event record."""
        self.struct_logger.info(name, component=self.name, **fields)

    def bind(self, **kwargs) -> "PipelineLogger":
        """Create new logger with bound context."""
        new_logger = PipelineLogger(self.name)
        new_logger.logger = self.logger.bind(**kwargs)
        new_logger.struct_logger = self.struct_logger.bind(**kwargs)
        return new_logger


def get_logger(name: str) -> PipelineLogger:
    """Get a logger instance for the specified component."""
    return PipelineLogger(name)


def generate_run_id() -> str:
    """Generate a new run identifier."""
    return uuid.uuid4().hex[:12]


def get_run_id() -> Optional[str]:
    return run_id.get()


@contextmanager
def run_context(run_id_value: Optional[str] = None) -> Iterator[Dict[str, str]]:
    """Tag every record emitted inside the block with one run id."""
    value = run_id_value or generate_run_id()
    token = run_id.set(value)
    structlog.contextvars.bind_contextvars(run_id=value)
    try:
        with logger.contextualize(run_id=value):
            yield {"run_id": value}
    finally:
        structlog.contextvars.unbind_contextvars("run_id")
        run_id.reset(token)


_logger_setup: Optional[LoggerSetup] = None


def setup_logging(level: Optional[str] = None, fmt: Optional[str] = None, file: Optional[str] = None) -> LoggerSetup:
    """Configure logging once per process; explicit arguments reconfigure."""
    global _logger_setup
    if _logger_setup is None or level or fmt or file:
        _logger_setup = LoggerSetup(level=level, fmt=fmt, file=file)
    return _logger_setup
