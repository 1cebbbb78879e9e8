"""Tests for the density law."""

import math

import pytest

from src.core.errors import GenerationError
from src.generator.density import (
    external_density,
    internal_density,
    internal_edge_count,
    mean_degree,
    round_half_up,
)


@pytest.mark.parametrize("n", [2, 3, 5, 10, 40])
def test_cliques_at_alpha_one(n: int):
    """With alpha = 1 every pair inside a community is an edge."""
    assert internal_edge_count(n, 1.0) == n * (n - 1) // 2
    assert internal_density(n, 1.0) == 1.0


def test_edge_count_follows_mean_degree():
    """Edge count is ceil(n * (n - 1)^alpha / 2)."""
    assert internal_edge_count(20, 0.9) == math.ceil(20 * 19**0.9 / 2)
    assert mean_degree(1, 0.5) == 0.0
    assert internal_edge_count(1, 0.9) == 0


def test_density_decreases_with_size():
    """Below alpha = 1, larger communities are sparser."""
    assert internal_density(50, 0.8) < internal_density(10, 0.8)


def test_external_density():
    """External density is beta times the whole-graph density."""
    assert external_density(101, 0.5, 0.2) == pytest.approx(0.2 * 100**-0.5)
    assert external_density(10, 0.9, 0.0) == 0.0


def test_undefined_sizes():
    """Densities need at least two nodes."""
    with pytest.raises(GenerationError):
        internal_density(1, 0.9)
    with pytest.raises(GenerationError):
        external_density(1, 0.9, 0.1)
    with pytest.raises(GenerationError):
        mean_degree(0, 0.9)


def test_round_half_up():
    """Halves round up."""
    assert [round_half_up(x) for x in (0.5, 1.5, 2.49, 2.5)] == [1, 2, 2, 3]
