"""Evaluation report files, as flat `key = value` text and as JSON."""

import json
import os
from pathlib import Path
from typing import Any

from src.core.errors import FormatError
from src.formats.key_value import format_key_values, parse_key_values
from src.metrics.report import EvaluationReport

# keys of the flat report, in file order; generator parameters follow when known
REPORT_KEYS = (
    "method",
    "avg_ami",
    "avg_ari",
    "avg_q",
    "sm_p",
    "sm_n",
    "sm_l",
    "lami",
    "lari",
    "sm_p_mode",
    "sm_p_literal",
    "mean_nmi",
    "label_changes",
    "mean_entropy",
    "steps_evaluated",
    "steps_skipped",
)
PARAM_KEYS = ("alpha", "beta", "beta_r", "seed")


def write_report(report: EvaluationReport) -> str:
    return format_key_values(report.flat())


def read_report(text: str) -> dict[str, Any]:
    """
    Parse a flat report.

    Raises:
        FormatError: If a documented key is missing or an unknown key is present.
    """
    values = parse_key_values(text)
    missing = [k for k in REPORT_KEYS if k not in values]
    if missing:
        raise FormatError(f"Report lacks the keys {missing}.")
    unknown = sorted(set(values) - set(REPORT_KEYS) - set(PARAM_KEYS))
    if unknown:
        raise FormatError(f"Unknown report keys {unknown}.")
    return values


def report_to_dict(report: EvaluationReport) -> dict[str, Any]:
    """Structured form of a report, with the per-step scores."""
    structured: dict[str, Any] = {
        "method": report.method,
        "scores": report.scores(),
        "smoothness": {
            "sm_p_mode": report.sm_p_mode,
            "sm_p": report.smoothness.sm_p,
            "sm_p_literal": report.smoothness.sm_p_literal,
            "mean_nmi": report.smoothness.mean_nmi,
            "sm_n": report.smoothness.sm_n,
            "label_changes": report.smoothness.changes,
            "sm_l": report.smoothness.sm_l,
            "mean_entropy": report.smoothness.mean_entropy,
        },
        "per_step": {
            name: {
                "steps": list(scores.steps),
                "values": list(scores.per_step),
                "skipped": list(scores.skipped),
            }
            for name, scores in (("ami", report.avg_ami), ("ari", report.avg_ari), ("q", report.avg_q))
        },
    }
    if report.params is not None:
        structured["params"] = {
            "alpha": report.params.alpha,
            "beta": report.params.beta,
            "beta_r": report.params.beta_r,
            "seed": report.params.seed,
        }
    return structured


def write_report_json(report: EvaluationReport) -> str:
    return json.dumps(report_to_dict(report), indent=2) + "\n"


def json_twin(report_path: str | os.PathLike) -> Path:
    """Path of the JSON copy of a flat report; `<stem>.report.json` if the report is a .json file."""
    path = Path(report_path)
    if path.suffix == ".json":
        return path.with_suffix(".report.json")
    return path.with_suffix(".json")


def load_report(path: str | os.PathLike) -> dict[str, Any]:
    """Read a report, flat or JSON according to the file suffix."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".json":
        try:
            return json.loads(text)
        except json.JSONDecodeError as e:
            raise FormatError(f"Invalid JSON report: {e.msg}", e.lineno) from e
    return read_report(text)
