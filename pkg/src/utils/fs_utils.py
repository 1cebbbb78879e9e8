"""Filesystem helpers: atomic writes so a failed command never leaves partial outputs."""

import os
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator

from src.utils.log_utils import setup_logger

log = setup_logger(__name__)


def write_text_atomic(path: str | os.PathLike, text: str) -> Path:
    """Write UTF-8 text to `path` through a temporary sibling file and an atomic rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(f".{path.name}.tmp")
    with open(tmp, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
    os.replace(tmp, path)
    return path


class OutputTransaction:
    """Collects the files written by one command so they can be removed on failure."""

    def __init__(self) -> None:
        self.written: list[Path] = []

    def write(self, path: str | os.PathLike, text: str) -> Path:
        """Write a file and remember it."""
        self.written.append(write_text_atomic(path, text))
        return self.written[-1]

    def rollback(self) -> None:
        """Remove every file written so far."""
        for path in self.written:
            log.warning("Removing partial output %s", path)
            path.unlink(missing_ok=True)
        self.written.clear()


@contextmanager
def output_transaction() -> Iterator[OutputTransaction]:
    """Context manager that rolls back written outputs if the block raises."""
    transaction = OutputTransaction()
    try:
        yield transaction
    except BaseException:
        transaction.rollback()
        raise
