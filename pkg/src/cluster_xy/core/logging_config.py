import logging
import logging.config
import os
from typing import Literal

from .base_setup import PROJECT_ROOT

'''
import logging
from core import setup_logging
setup_logging()
log = logging.getLogger(__name__)
'''


class LogsFormatter(logging.Formatter):
    """
    Standard formatter that appends every ``extra={...}`` field of a record as ``[key=value, ...]``.
    """

    def __init__(
        self,
        fmt=None,
        datefmt=None,
        style: Literal["%", "{", "$"] = "%",
        validate=True,  # noqa: FBT002
    ) -> None:
        super().__init__(fmt, datefmt, style, validate)
        blank = logging.LogRecord(
            name="",
            level=0,
            pathname="",
            lineno=0,
            msg="",
            args=(),
            exc_info=None,
        )
        self._reserved = set(blank.__dict__) | {"message"}
        if self.usesTime():
            self._reserved.add("asctime")

    def format(self, record) -> str:
        message = super().format(record)
        extras = {
            key: value for key, value in record.__dict__.items()
            if key not in self._reserved and not key.startswith("_")
        }  # fmt: skip
        if not extras:
            return message
        return message + " [" + ", ".join(f"{key}={value}" for key, value in extras.items()) + "]"


def setup_logging(level: str | None = None) -> None:
    """
    Setup logger, call once for entrypoint.

    :param level: Root level, falls back to ``APP_LOG_LEVEL`` and then to ``INFO``.
    """
    logs_dir = PROJECT_ROOT / "logs"
    logs_dir.mkdir(parents=True, exist_ok=True)

    logging_config = {
        "version": 1,
        "disable_existing_loggers": False,
        "formatters": {
            "standard": {
                "()": LogsFormatter,
                "format": "%(asctime)s [%(levelname)s] %(name)s: %(message)s",
                "datefmt": "%H:%M:%S",
            },
        },
        "handlers": {
            "console": {
                "class": "logging.StreamHandler",
                "level": "WARNING",
                "formatter": "standard",
                "stream": "ext://sys.stderr",
            },
            "file": {
                "class": "logging.handlers.RotatingFileHandler",
                "level": "DEBUG",
                "formatter": "standard",
                "filename": str(logs_dir / "cluster_xy.log"),
                "maxBytes": 1_000_000,
                "backupCount": 3,
                "encoding": "utf-8",
            },
        },
        "root": {
            "level": level or os.getenv("APP_LOG_LEVEL", "INFO"),
            "handlers": ["console", "file"],
        },
    }

    logging.config.dictConfig(logging_config)
