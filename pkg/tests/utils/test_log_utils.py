"""Tests for the log_utils module."""

import logging
from pathlib import Path

from src.utils.log_utils import remove_file_logger, set_package_level, setup_file_logger, setup_logger


def test_setup_logger():
    """Loggers get the requested level."""
    log = setup_logger("src.tests.example", "INFO")
    assert log.level == logging.INFO


def test_set_package_level():
    """Every package logger follows the package level."""
    log = setup_logger("src.tests.package_level", "WARNING")
    other = logging.getLogger("elsewhere")
    other.setLevel(logging.ERROR)
    set_package_level("DEBUG")
    try:
        assert log.level == logging.DEBUG
        assert other.level == logging.ERROR
    finally:
        set_package_level("WARNING")


def test_file_logger(tmp_path: Path):
    """Messages reach the file until the handler is removed."""
    path = tmp_path / "run.log"
    handler = setup_file_logger("src.tests.file", path)
    log = logging.getLogger("src.tests.file")
    log.info("first")
    remove_file_logger(handler, "src.tests.file")
    log.info("second")
    text = path.read_text(encoding="utf-8")
    assert "first" in text
    assert "second" not in text
    assert handler not in log.handlers
