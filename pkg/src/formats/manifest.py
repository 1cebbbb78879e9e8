"""Run manifests and event logs written next to generated benchmarks."""

import os
from pathlib import Path
from typing import Any, Mapping, Sequence

import pandas as pd

from src.formats.key_value import format_key_values, parse_key_values
from src.scenario.structure import EventRecord

MANIFEST_NAME = "manifest.txt"
EVENT_LOG_COLUMNS = ("index", "kind", "decl", "trigger_ready", "delay", "start", "end", "before", "after")


def write_manifest(values: Mapping[str, Any]) -> str:
    """Every resolved parameter of a run, one `key = value` line each, sorted by key."""
    return format_key_values(dict(sorted(values.items())))


def read_manifest(text: str) -> dict[str, Any]:
    return parse_key_values(text)


def load_manifest(path: str | os.PathLike) -> dict[str, Any]:
    return read_manifest(Path(path).read_text(encoding="utf-8"))


def _communities(communities) -> str:
    return ",".join(f"{c.label}#{c.id}:{len(c)}" for c in communities) or "-"


def event_log_frame(records: Sequence[EventRecord]) -> pd.DataFrame:
    """One row per executed event; communities as `label#id:size`."""
    rows = [
        {
            "index": r.index,
            "kind": r.kind.value,
            "decl": r.decl,
            "trigger_ready": r.trigger_ready,
            "delay": r.delay,
            "start": r.start,
            "end": r.end,
            "before": _communities(r.before),
            "after": _communities(r.after),
        }
        for r in records
    ]
    return pd.DataFrame(rows, columns=list(EVENT_LOG_COLUMNS))


def write_event_log(records: Sequence[EventRecord]) -> str:
    """Tab-separated event log."""
    return event_log_frame(records).to_csv(sep="\t", index=False, lineterminator="\n")
