"""Parses the params.yaml file to return a config object that can be used in other modules."""

import os
from pathlib import Path

import yaml
from dotenv import find_dotenv, load_dotenv

SEED_ENV_VAR = "DCBENCH_SEED"


def project_root() -> Path:
    """
    Return the project root. Taken from a PROJECT_ROOT variable (environment or local .env
    file) when set, otherwise the directory that contains the `src` package.
    """
    load_dotenv(find_dotenv(usecwd=True))
    root = os.environ.get("PROJECT_ROOT")
    if root:
        return Path(root)
    return Path(__file__).resolve().parents[2]


def parse_params(params_file: str | os.PathLike | None = None) -> dict:
    """
    Parse a params.yaml file to return a config object that can be used in other modules.

    Args:
        params_file (str | os.PathLike | None): Explicit path to a params file. Defaults to
            `params.yaml` in the project root.

    Returns:
        dict: The parsed parameters, or an empty dict if no params file exists.
    """
    path = Path(params_file) if params_file is not None else project_root() / "params.yaml"
    if not path.exists():
        return {}
    with open(path, "r", encoding="utf-8") as f:
        return yaml.safe_load(f.read()) or {}


def default_seed(fallback: int = 0) -> int:
    """Seed from the DCBENCH_SEED environment variable, or `fallback` if it is not set."""
    load_dotenv(find_dotenv(usecwd=True))
    value = os.environ.get(SEED_ENV_VAR)
    if value is None or value.strip() == "":
        return fallback
    return int(value)
