"""Tests for partition files."""

import pytest

from src.core.errors import FormatError
from src.core.partition import UNDEFINED, LongitudinalPartition
from src.core.types import DynamicGraph, Snapshot
from src.formats.partition_file import HEADER, read_partition, with_presence, write_partition


def test_sorted_by_step_then_node():
    """Lines are `t node label`, sorted by step, then node; undefined tuples are left out."""
    partition = LongitudinalPartition({(3, 0): "B", (1, 1): "A", (0, 1): "A", (2, 0): UNDEFINED})
    assert write_partition(partition) == f"{HEADER}\n0 3 B\n1 0 A\n1 1 A\n"


def test_round_trip_of_defined_labels():
    """Defined labels survive a round trip."""
    partition = LongitudinalPartition({(0, 0): "L0", (5, 2): "x-1", (2, 2): "7"})
    assert read_partition(write_partition(partition)) == partition


def test_whitespace_in_label_rejected():
    """Labels are single tokens."""
    with pytest.raises(FormatError):
        write_partition(LongitudinalPartition({(0, 0): "two words"}))


@pytest.mark.parametrize("body", ["0 1\n", "0 x A\n", "-1 0 A\n", "0 0 A\n0 0 B\n", "0 0 A B\n"])
def test_malformed(body: str):
    """Malformed lines and repeated tuples are rejected."""
    with pytest.raises(FormatError):
        read_partition(f"{HEADER}\n{body}")


def test_presence_restores_undefined_tuples():
    """Nodes present in the graph without a label become undefined."""
    graph = DynamicGraph((Snapshot(0, {0, 1}, {(0, 1)}),))
    partition = with_presence(LongitudinalPartition({(0, 0): "A"}), graph)
    assert dict(partition.assignments) == {(0, 0): "A", (1, 0): UNDEFINED}
