"""Tests for longitudinal partitions."""

import pytest

from src.core.errors import NothingToCompareError
from src.core.partition import UNDEFINED, LongitudinalPartition, restrict


@pytest.fixture(name="partition")
def fixture_partition() -> LongitudinalPartition:
    """Two nodes over three steps; node 1 is undefined at step 1 and absent at step 2."""
    return LongitudinalPartition.from_steps(
        {
            0: {0: "A", 1: "A"},
            1: {0: "A", 1: UNDEFINED},
            2: {0: "B"},
        }
    )


def test_label_lookup(partition: LongitudinalPartition):
    """Undefined and absent tuples both have no label, but only undefined ones are keys."""
    assert partition.label(0, 2) == "B"
    assert partition.label(1, 1) is None
    assert (1, 1) in partition.assignments
    assert (1, 2) not in partition.assignments


def test_views(partition: LongitudinalPartition):
    """Step and node views are sorted; `at` keeps defined labels only."""
    assert partition.num_steps == 3
    assert partition.nodes() == [0, 1]
    assert partition.labels() == {"A", "B"}
    assert partition.at(1) == {0: "A"}
    assert list(partition.by_node[1]) == [0, 1]
    assert len(partition.defined) == 4


def test_invalid_label_rejected():
    """Labels are non-empty strings."""
    with pytest.raises(ValueError):
        LongitudinalPartition({(0, 0): ""})
    with pytest.raises(ValueError):
        LongitudinalPartition({(-1, 0): "A"})


def test_equality_ignores_order():
    """Two partitions with the same assignments are equal and hash alike."""
    a = LongitudinalPartition({(0, 0): "A", (1, 0): "B"})
    b = LongitudinalPartition({(1, 0): "B", (0, 0): "A"})
    assert a == b
    assert hash(a) == hash(b)


def test_restrict_to_joint_domain(partition: LongitudinalPartition):
    """Only tuples defined in both partitions are kept."""
    other = LongitudinalPartition({(0, 0): "x", (1, 1): "y", (0, 2): "z"})
    p, q = restrict(partition, other)
    assert set(p.assignments) == set(q.assignments) == {(0, 0), (0, 2)}


def test_restrict_nothing_to_compare(partition: LongitudinalPartition):
    """Disjoint domains cannot be compared."""
    with pytest.raises(NothingToCompareError):
        restrict(partition, LongitudinalPartition({(5, 0): "A"}))
