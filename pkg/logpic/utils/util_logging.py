"""
Loguru sinks for the command line tools.
"""
from __future__ import annotations

import os
import sys

import ubelt as ub
from loguru import logger


def configure_logging(level: str | None = None, log_fpath=None) -> None:
    """
    Replace the default loguru sink with a stderr sink and, optionally, a
    plain text log file that rotates at 10 MB.

    The level falls back to ``LOGPIC_LOG_LEVEL`` and then ``WARNING`` so that
    standard output stays reserved for JSON reports.

    Example:
        >>> from logpic.utils.util_logging import configure_logging
        >>> configure_logging('DEBUG')
        >>> configure_logging()
    """
    if not level:
        level = os.environ.get('LOGPIC_LOG_LEVEL', 'WARNING')
    level = level.upper()
    logger.remove()
    logger.add(sys.stderr, level=level, colorize=True, backtrace=False, diagnose=False)
    if log_fpath is not None:
        log_fpath = ub.Path(log_fpath)
        log_fpath.parent.ensuredir()
        # synchronous so the file is complete when a verb returns
        logger.add(log_fpath, level=level, rotation='10 MB', colorize=False,
                   backtrace=False, diagnose=False)
        logger.debug('logging to {}', log_fpath)
