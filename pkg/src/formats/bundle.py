"""Locations of the files a benchmark run reads and writes."""

import os
from dataclasses import dataclass
from pathlib import Path

from src.formats.manifest import MANIFEST_NAME
from src.formats.report_file import json_twin


@dataclass(frozen=True)
class FileBundle:
    """
    Attributes:
        edges (Path): Edge-stream file.
        partition (Path): Detected partition.
        ground_truth (Path): Planted partition.
        report (Path): Flat evaluation report; the JSON variant sits next to it.
        manifest (Path): Resolved parameters of the generating run.
        event_log (Path): Executed events of the scenario.
    """

    edges: Path
    partition: Path
    ground_truth: Path
    report: Path
    manifest: Path
    event_log: Path

    def __post_init__(self):
        paths = [Path(p) for p in self.paths()]
        if len(set(paths)) != len(paths):
            raise ValueError(f"Bundle paths must be distinct, got {paths}.")
        for name, path in zip(self.__dataclass_fields__, paths):
            object.__setattr__(self, name, path)

    def paths(self) -> tuple:
        return (self.edges, self.partition, self.ground_truth, self.report, self.manifest, self.event_log)

    @property
    def report_json(self) -> Path:
        return json_twin(self.report)

    @classmethod
    def in_dir(cls, out_dir: str | os.PathLike) -> "FileBundle":
        """Default file names inside one output directory."""
        out = Path(out_dir)
        return cls(
            edges=out / "edges.tnet",
            partition=out / "partition.txt",
            ground_truth=out / "ground_truth.txt",
            report=out / "report.txt",
            manifest=out / MANIFEST_NAME,
            event_log=out / "events.tsv",
        )
