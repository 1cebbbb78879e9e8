"""Tests for the parallel_utils module."""

import pytest

from src.utils.parallel_utils import parallel_map


@pytest.mark.parametrize("jobs", [1, 3])
def test_order_preserved(jobs: int):
    """Results come back in input order."""
    assert parallel_map(lambda x: x * x, range(10), jobs) == [x * x for x in range(10)]


def test_empty_input():
    """Nothing in, nothing out."""
    assert parallel_map(str, [], 4) == []
