"""
Logging setup and JSON-line records for certification runs
"""

import json
import math
import sys
from typing import Any, Dict, Optional

from loguru import logger

CONSOLE_FORMAT = (
    "<green>{time:HH:mm:ss.SSS}</green> | "
    "<level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{line}</cyan> | "
    "<level>{message}</level>"
)
FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss.SSS} | {level: <8} | {name}:{line} | {message}"


def _plain(value: Any) -> Any:
    # json.dumps would write Infinity / NaN, which strict parsers reject
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return value


class StructuredLogger:
    """
    Writes one JSON object per log line: claim outcomes, worst violations,
    probe summaries. Records carry no timestamp of their own; loguru adds it
    on the console, and the payload stays identical across seeded runs.
    """

    def __init__(self, service_name: str = "hedgemap"):
        self.service_name = service_name
        self.context: Dict[str, Any] = {}

    def set_context(self, **fields: Any) -> None:
        """Fields merged into every later record (model, seed, ...)."""
        self.context.update(fields)

    def _emit(self, level: str, kind: str, message: str, fields: Dict[str, Any]) -> None:
        record = {"kind": kind, "service": self.service_name, "message": message, **self.context}
        record.update({key: _plain(value) for key, value in fields.items()})
        logger.log(level, json.dumps(record, default=str, sort_keys=True))

    def debug(self, message: str, **fields: Any) -> None:
        self._emit("DEBUG", "log", message, fields)

    def info(self, message: str, **fields: Any) -> None:
        self._emit("INFO", "log", message, fields)

    def warning(self, message: str, **fields: Any) -> None:
        self._emit("WARNING", "log", message, fields)

    def error(self, message: str, error: Optional[BaseException] = None, **fields: Any) -> None:
        if error is not None:
            fields["error_type"] = type(error).__name__
            fields["error_message"] = str(error)
        self._emit("ERROR", "log", message, fields)

    def metric(self, name: str, value: float, unit: str = "", **fields: Any) -> None:
        fields.update(metric_name=name, metric_value=value)
        if unit:
            fields["metric_unit"] = unit
        self._emit("INFO", "metric", f"{name}={value}", fields)

    def event(self, event_name: str, **fields: Any) -> None:
        fields["event_name"] = event_name
        self._emit("INFO", "event", event_name, fields)


def setup_logging(level: str = "INFO", json_output: bool = False, log_file: Optional[str] = None) -> None:
    """
    Route loguru to stderr (stdout carries command results) and optionally to
    a rotating file.

    With `json_output` the console shows bare messages, so the structured
    records come out as clean JSON lines.
    """
    logger.remove()
    logger.add(
        sys.stderr,
        format="{message}" if json_output else CONSOLE_FORMAT,
        level=level,
        colorize=not json_output,
    )
    if log_file:
        logger.add(
            log_file,
            format=FILE_FORMAT,
            level=level,
            rotation="10 MB",
            retention="7 days",
            compression="gz",
        )
    logger.debug(f"[LOGGING] level={level} json={json_output} file={log_file}")


structured_logger = StructuredLogger()
