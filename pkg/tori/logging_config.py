"""
Platform-aware logging configuration for ToriCount.

Console records go to stderr so that JSON results on stdout stay
byte-for-byte reproducible.
"""

import logging
import sys
from pathlib import Path
from typing import Optional

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_DATEFMT = "%Y-%m-%d %H:%M:%S"


def get_default_log_file() -> Path:
    """
    Get the default log file path based on the current platform.

    Returns:
        Path: Platform-specific log file path
            - Linux: ~/.local/state/toricount/toricount.log
            - macOS: ~/Library/Logs/ToriCount/toricount.log
            - Windows: %LOCALAPPDATA%\\ToriCount\\toricount.log
    """
    if sys.platform == "darwin":
        log_dir = Path.home() / "Library" / "Logs" / "ToriCount"
    elif sys.platform == "win32":
        log_dir = Path.home() / "AppData" / "Local" / "ToriCount"
    else:
        log_dir = Path.home() / ".local" / "state" / "toricount"

    log_dir.mkdir(parents=True, exist_ok=True)
    return log_dir / "toricount.log"


def setup_logging(
    level: int = logging.INFO,
    log_file: Optional[Path] = None,
    console: bool = True,
) -> logging.Logger:
    """
    Set up logging with file and/or console handlers.

    Args:
        level: Logging level (e.g., logging.DEBUG, logging.INFO)
        log_file: Path to log file. If None, uses platform default.
        console: Whether to log to stderr

    Returns:
        logging.Logger: Configured root logger
    """
    logger = logging.getLogger()
    logger.setLevel(level)
    logger.handlers.clear()

    formatter = logging.Formatter(fmt=LOG_FORMAT, datefmt=LOG_DATEFMT)

    try:
        if log_file is None:
            log_file = get_default_log_file()
        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setLevel(level)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)
    except Exception as e:
        print(f"Warning: Could not set up file logging at {log_file}: {e}", file=sys.stderr)

    if console:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(level)
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)

    return logger


def setup_default_logging(verbose: bool = False, log_file: Optional[Path] = None) -> logging.Logger:
    """
    Set up logging for a CLI run.

    Args:
        verbose: If True, use DEBUG level; otherwise WARNING on the console
        log_file: Optional explicit log file path

    Returns:
        logging.Logger: Configured root logger
    """
    level = logging.DEBUG if verbose else logging.INFO
    root = setup_logging(level=level, log_file=log_file, console=True)
    if not verbose:
        # keep stderr quiet for routine runs; the file still gets INFO
        for handler in root.handlers:
            if isinstance(handler, logging.StreamHandler) and not isinstance(handler, logging.FileHandler):
                handler.setLevel(logging.WARNING)
    return root
