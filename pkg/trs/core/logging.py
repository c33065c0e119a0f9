"""
📝 Logging Setup
Loguru sinks plus interception of standard-library logging
"""

import logging
import sys
from pathlib import Path
from typing import Optional

from loguru import logger

from trs.core.config import settings

LOG_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} | {level} | {module}:{function}:{line} | {message}"


class InterceptHandler(logging.Handler):
    """Forward standard logging records (uvicorn, celery) to loguru"""

    def emit(self, record: logging.LogRecord) -> None:
        try:
            level = logger.level(record.levelname).name
        except ValueError:
            level = record.levelno

        frame, depth = logging.currentframe(), 2
        while frame and frame.f_code.co_filename == logging.__file__:
            frame = frame.f_back
            depth += 1

        logger.opt(depth=depth, exception=record.exc_info).log(level, record.getMessage())


def setup_logging(level: Optional[str] = None, log_file: Optional[str] = None) -> None:
    """(Re)configure loguru sinks; safe to call more than once"""
    level = (level or settings.LOG_LEVEL).upper()

    logger.remove()
    logger.add(sys.stderr, level=level, format=LOG_FORMAT)

    target = log_file or settings.LOG_FILE
    if settings.ENABLE_LOGGING and target:
        Path(target).parent.mkdir(parents=True, exist_ok=True)
        logger.add(
            target,
            rotation=settings.LOG_ROTATION,
            retention=settings.LOG_RETENTION,
            level=level,
            format=LOG_FORMAT,
        )

    logging.basicConfig(handlers=[InterceptHandler()], level=0, force=True)
