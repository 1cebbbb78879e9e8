"""Setup logging for the project."""

import logging
import os

PACKAGE_LOGGER = "src"


def setup_logger(
    name: str = "__main__", level: str | int = "WARNING"
) -> logging.Logger:
    """Setup logging for the project."""
    logging.basicConfig(
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S %Z",
    )
    log = logging.getLogger(name)
    log.setLevel(level)
    return log


def set_package_level(level: str | int) -> None:
    """Set the level of every logger that belongs to the package."""
    logging.getLogger(PACKAGE_LOGGER).setLevel(level)
    for name, logger in logging.root.manager.loggerDict.items():
        if isinstance(logger, logging.Logger) and name.startswith(PACKAGE_LOGGER + "."):
            logger.setLevel(level)


def setup_file_logger(
    logger_name: str = "__main__",
    log_file: str | os.PathLike = "log.txt",
    level=logging.INFO,
) -> logging.FileHandler:
    """Setup a file logger. Returns the handler so callers can detach it again."""
    l = logging.getLogger(logger_name)
    formatter = logging.Formatter("%(asctime)s : %(name)s : %(message)s")
    file_handler = logging.FileHandler(log_file, mode="a")
    file_handler.setFormatter(formatter)

    l.setLevel(level)
    l.addHandler(file_handler)
    return file_handler


def remove_file_logger(handler: logging.Handler, logger_name: str = "__main__") -> None:
    """Detach and close a handler returned by `setup_file_logger`."""
    logging.getLogger(logger_name).removeHandler(handler)
    handler.close()
