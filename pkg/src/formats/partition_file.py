"""Partition files: one `t node label` line per labelled (node, step) tuple."""

import os
from pathlib import Path

from src.core.errors import FormatError
from src.core.partition import UNDEFINED, LongitudinalPartition
from src.core.types import DynamicGraph, Label, NodeId, StepIndex

HEADER = "# partition v1"


def write_partition(partition: LongitudinalPartition) -> str:
    """
    Serialize the defined labels of a partition, sorted by (t, node).

    Raises:
        FormatError: If a label contains whitespace.
    """
    lines = [HEADER]
    for (node, step), label in sorted(partition.defined.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        if label.split() != [label]:
            raise FormatError(f"Label {label!r} of node {node} at step {step} contains whitespace.")
        lines.append(f"{step} {node} {label}")
    return "\n".join(lines) + "\n"


def read_partition(text: str) -> LongitudinalPartition:
    """
    Parse a partition file. Undefined tuples are not stored; see `with_presence`.

    Raises:
        FormatError: On a missing header, a malformed line or a repeated (t, node).
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != HEADER:
        raise FormatError(f"Expected header '{HEADER}'.", 1)

    assignments: dict[tuple[NodeId, StepIndex], Label] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        tokens = line.split(" ")
        if len(tokens) != 3 or not tokens[2]:
            raise FormatError(f"Expected 't node label', got '{line}'.", lineno)
        try:
            step, node = int(tokens[0]), int(tokens[1])
        except ValueError as e:
            raise FormatError(f"Step and node must be integers, got '{line}'.", lineno) from e
        if step < 0 or node < 0:
            raise FormatError(f"Negative step or node in '{line}'.", lineno)
        if (node, step) in assignments:
            raise FormatError(f"Node {node} has two labels at step {step}.", lineno)
        assignments[(node, step)] = tokens[2]
    return LongitudinalPartition(assignments)


def with_presence(partition: LongitudinalPartition, graph: DynamicGraph) -> LongitudinalPartition:
    """Mark every node present in `graph` but unlabelled in `partition` as undefined."""
    assignments = dict(partition.assignments)
    for snapshot in graph:
        for node in snapshot.nodes:
            assignments.setdefault((node, snapshot.step), UNDEFINED)
    return LongitudinalPartition(assignments)


def load_partition(path: str | os.PathLike) -> LongitudinalPartition:
    """Read a partition file from disk."""
    return read_partition(Path(path).read_text(encoding="utf-8"))
