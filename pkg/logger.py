"""
Dual logging system for the self-dual code toolkit
Provides both console output (brief) and file output (detailed)
"""

import logging
import sys
from pathlib import Path

LOGGER_NAME = 'selfdual_codes'


def setup_logger(log_file=None, console_level=logging.WARNING, file_level=logging.DEBUG):
    """
    Configure dual logging system with console and file outputs.

    The console handler writes to stderr: stdout carries the JSON/CSV
    payload of the command line and must stay parseable.

    Args:
        log_file: Path to log file. If None, only console output is used.
        console_level: Logging level for console output (default: WARNING)
        file_level: Logging level for file output (default: DEBUG)

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(logging.DEBUG)

    # Clear any existing handlers to avoid duplication
    logger.handlers.clear()
    logger.propagate = False

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(console_level)
    console_formatter = logging.Formatter(
        '%(asctime)s - %(levelname)s: %(message)s',
        datefmt='%H:%M:%S'
    )
    console_handler.setFormatter(console_formatter)
    logger.addHandler(console_handler)

    # File Handler (detailed - augmentation steps, enumeration chunks)
    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(exist_ok=True, parents=True)

        file_handler = logging.FileHandler(log_path, encoding='utf-8')
        file_handler.setLevel(file_level)
        file_formatter = logging.Formatter(
            '%(asctime)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )
        file_handler.setFormatter(file_formatter)
        logger.addHandler(file_handler)

    return logger


def level_from_name(name, default=logging.WARNING):
    """Translate a config level name ("INFO", "debug", ...) into a logging level."""
    if isinstance(name, int):
        return name
    if not name:
        return default
    # getLevelName returns "Level X" for unknown names
    level = logging.getLevelName(str(name).upper())
    return level if isinstance(level, int) else default
